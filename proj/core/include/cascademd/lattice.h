#pragma once

#include <cstdint>

#include "cascademd/vec3.h"

// BCC lattice indexing with a doubled x axis: even x is the cube-corner
// sublattice, odd x the body-center sublattice.  One unit cell therefore
// holds coordinates x and x+1, and a box of box_x * box_y * box_z cells has
// 2 * box_x * box_y * box_z sites.
//
// Frames: lattice coordinates are zero-based at the corner of the
// ghost-inclusive box (ghost shell first, interior after ghost_width cells).
// Physical positions put coordinate (0,0,0) at the origin, so interior atoms
// live in [ghost_width*a0, (ghost_width+box)*a0) per axis.

namespace cascademd {

using LatticeId = std::int64_t;

struct BoxSpec {
  long box_x = 0, box_y = 0, box_z = 0;  // interior cells per axis
  double a0 = 0.0;                       // lattice constant, Angstrom
  long ghost_width = 0;                  // ghost shell thickness, cells

  long total_x() const { return box_x + 2 * ghost_width; }
  long total_y() const { return box_y + 2 * ghost_width; }
  long total_z() const { return box_z + 2 * ghost_width; }

  // sites in the ghost-inclusive box; also the hash-array slot count
  long slot_count() const { return 2 * total_x() * total_y() * total_z(); }
  long interior_count() const { return 2 * box_x * box_y * box_z; }

  // periodic box lengths (interior), Angstrom
  double len_x() const { return box_x * a0; }
  double len_y() const { return box_y * a0; }
  double len_z() const { return box_z * a0; }

  bool valid() const {
    return box_x > 0 && box_y > 0 && box_z > 0 && a0 > 0.0 && ghost_width >= 0;
  }
};

struct LatticeCoord {
  long x = 0;  // doubled: 0 <= x < 2*total_x
  long y = 0;  // 0 <= y < total_y
  long z = 0;  // 0 <= z < total_z

  bool operator==(const LatticeCoord&) const = default;
};

// flat id: x varies fastest, then y, then z
LatticeId coord_to_id(const LatticeCoord& c, const BoxSpec& b);
LatticeCoord id_to_coord(LatticeId id, const BoxSpec& b);

bool coord_in_box(const LatticeCoord& c, const BoxSpec& b);

// true when the coordinate lies in the ghost shell
bool is_ghost(const LatticeCoord& c, const BoxSpec& b);
bool is_ghost(LatticeId id, const BoxSpec& b);

// site center in Angstrom; corner sites at integer multiples of a0, center
// sites offset by a0/2 on every axis
Vec3 site_position(const LatticeCoord& c, const BoxSpec& b);

// Nearest site of either sublattice, ties broken toward the smaller id.
// No bounds are applied to the result, so positions outside the box map to
// out-of-range coordinates; store-level wrapping relies on that.
LatticeCoord nearest_site_coord(const Vec3& p, double a0);

// hash(pos): id of the nearest site.  p must lie inside the ghost-inclusive
// box volume (throws std::domain_error otherwise); candidate sites are
// clamped to the box so edge positions resolve to existing sites.
LatticeId nearest_site(const Vec3& p, const BoxSpec& b);

}  // namespace cascademd
