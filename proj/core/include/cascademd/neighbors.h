#pragma once

#include <vector>

#include "cascademd/lattice.h"

namespace cascademd {

// Precomputed signed id offsets to every lattice site within a cutoff of a
// representative site.  Offsets depend only on the site's sublattice parity
// (even/corner vs odd/center) and the box strides, never on the absolute
// position, so one pair of lists serves the whole box.  Half lists keep the
// strictly positive offsets: iterating them visits every unordered site pair
// exactly once, and always from the lower id toward the higher one (partner
// z never below the atom's own cell), which is what makes the colored
// z-block schedule conflict-free.
struct OffsetIndex {
  double cutoff = 0.0;  // radius the lists were built for, Angstrom
  long z_reach = 0;     // max partner z-cell delta over the half lists
  std::vector<LatticeId> even_full, odd_full;  // ascending, no zero offset
  std::vector<LatticeId> even_half, odd_half;  // positive offsets only

  const std::vector<LatticeId>& full(bool odd) const {
    return odd ? odd_full : even_full;
  }
  const std::vector<LatticeId>& half(bool odd) const {
    return odd ? odd_half : even_half;
  }
};

// Enumerates candidate sites in a coordinate cube of radius
// ceil(cutoff/a0)+1 cells and keeps those within `cutoff` (site center to
// site center, inclusive).  Requires cutoff <= ghost_width * a0 so offsets
// applied to interior sites stay inside the ghost-inclusive box; throws
// std::invalid_argument otherwise.
OffsetIndex build_offsets(const BoxSpec& b, double cutoff);

// ids of all sites within the index cutoff of `id` (non-ghost), ascending
std::vector<LatticeId> neighbors_of(LatticeId id, const OffsetIndex& idx,
                                    const BoxSpec& b);

}  // namespace cascademd
