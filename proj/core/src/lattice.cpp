#include "cascademd/lattice.h"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cascademd {

LatticeId coord_to_id(const LatticeCoord& c, const BoxSpec& b) {
  assert(coord_in_box(c, b));
  const long tx2 = 2 * b.total_x();
  return static_cast<LatticeId>(tx2) * b.total_y() * c.z +
         static_cast<LatticeId>(tx2) * c.y + c.x;
}

LatticeCoord id_to_coord(LatticeId id, const BoxSpec& b) {
  assert(id >= 0 && id < b.slot_count());
  const long tx2 = 2 * b.total_x();
  LatticeCoord c;
  c.x = static_cast<long>(id % tx2);
  id /= tx2;
  c.y = static_cast<long>(id % b.total_y());
  c.z = static_cast<long>(id / b.total_y());
  return c;
}

bool coord_in_box(const LatticeCoord& c, const BoxSpec& b) {
  return c.x >= 0 && c.x < 2 * b.total_x() &&
         c.y >= 0 && c.y < b.total_y() &&
         c.z >= 0 && c.z < b.total_z();
}

bool is_ghost(const LatticeCoord& c, const BoxSpec& b) {
  const long g = b.ghost_width;
  return c.x < 2 * g || c.x >= 2 * (g + b.box_x) ||
         c.y < g || c.y >= g + b.box_y ||
         c.z < g || c.z >= g + b.box_z;
}

bool is_ghost(LatticeId id, const BoxSpec& b) {
  return is_ghost(id_to_coord(id, b), b);
}

Vec3 site_position(const LatticeCoord& c, const BoxSpec& b) {
  const double a = b.a0;
  if (c.x % 2 == 0) {
    return {0.5 * c.x * a, c.y * a, c.z * a};
  }
  // body-center site: half-cell offset on every axis
  return {0.5 * (c.x - 1) * a + 0.5 * a, c.y * a + 0.5 * a, c.z * a + 0.5 * a};
}

namespace {

// round to nearest integer, halves toward -inf so distance ties resolve to
// the smaller coordinate (and thus the smaller id)
inline long round_half_down(double t) {
  return static_cast<long>(std::ceil(t - 0.5));
}

inline double sq(double v) { return v * v; }

}  // namespace

LatticeCoord nearest_site_coord(const Vec3& p, double a0) {
  const double fx = p.x / a0, fy = p.y / a0, fz = p.z / a0;

  // nearest corner-sublattice site
  const long ci = round_half_down(fx);
  const long cj = round_half_down(fy);
  const long ck = round_half_down(fz);
  const double dc = sq(fx - ci) + sq(fy - cj) + sq(fz - ck);

  // nearest center-sublattice site (offset by 1/2 on each axis)
  const long bi = round_half_down(fx - 0.5);
  const long bj = round_half_down(fy - 0.5);
  const long bk = round_half_down(fz - 0.5);
  const double db = sq(fx - bi - 0.5) + sq(fy - bj - 0.5) + sq(fz - bk - 0.5);

  const LatticeCoord corner{2 * ci, cj, ck};
  const LatticeCoord center{2 * bi + 1, bj, bk};
  if (dc < db) return corner;
  if (db < dc) return center;
  // exact tie between sublattices: smaller id wins, i.e. lexicographic (z,y,x)
  if (corner.z != center.z) return corner.z < center.z ? corner : center;
  if (corner.y != center.y) return corner.y < center.y ? corner : center;
  return corner.x < center.x ? corner : center;
}

namespace {

inline long clamp_cell(long v, long lo, long hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

LatticeId nearest_site(const Vec3& p, const BoxSpec& b) {
  const double a = b.a0;
  if (p.x < 0.0 || p.x >= b.total_x() * a ||
      p.y < 0.0 || p.y >= b.total_y() * a ||
      p.z < 0.0 || p.z >= b.total_z() * a) {
    throw std::domain_error(
        "nearest_site: position (" + std::to_string(p.x) + ", " +
        std::to_string(p.y) + ", " + std::to_string(p.z) +
        ") outside the ghost-inclusive box volume");
  }

  const double fx = p.x / a, fy = p.y / a, fz = p.z / a;

  // per sublattice the grid is rectangular, so the nearest in-range site is
  // the per-axis clamped rounding
  const long ci = clamp_cell(round_half_down(fx), 0, b.total_x() - 1);
  const long cj = clamp_cell(round_half_down(fy), 0, b.total_y() - 1);
  const long ck = clamp_cell(round_half_down(fz), 0, b.total_z() - 1);
  const double dc = sq(fx - ci) + sq(fy - cj) + sq(fz - ck);

  const long bi = clamp_cell(round_half_down(fx - 0.5), 0, b.total_x() - 1);
  const long bj = clamp_cell(round_half_down(fy - 0.5), 0, b.total_y() - 1);
  const long bk = clamp_cell(round_half_down(fz - 0.5), 0, b.total_z() - 1);
  const double db = sq(fx - bi - 0.5) + sq(fy - bj - 0.5) + sq(fz - bk - 0.5);

  const LatticeCoord corner{2 * ci, cj, ck};
  const LatticeCoord center{2 * bi + 1, bj, bk};
  if (dc < db) return coord_to_id(corner, b);
  if (db < dc) return coord_to_id(center, b);
  const LatticeId id_corner = coord_to_id(corner, b);
  const LatticeId id_center = coord_to_id(center, b);
  return id_corner < id_center ? id_corner : id_center;
}

}  // namespace cascademd
