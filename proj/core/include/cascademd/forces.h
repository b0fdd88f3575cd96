#pragma once

#include "cascademd/neighbors.h"
#include "cascademd/parallel.h"
#include "cascademd/potential.h"
#include "cascademd/store.h"

namespace cascademd {

// Alternating red/blue z-blocks over the interior cells.  Within one color
// no two blocks come closer than the block between them, and that block is
// at least ceil(cutoff/a0) cells thick, so with half lists (which only
// reach upward in z) concurrent same-color workers never write the same
// atom.  Workers may be reduced below the request when the box is thin.
struct ColorBlock {
  long z_lo = 0, z_hi = 0;  // ghost-inclusive cell range [z_lo, z_hi)
  int color = 0;            // 0 red, 1 blue
};

struct ColorPartition {
  std::vector<ColorBlock> blocks;  // ascending z, colors alternating from red
  int workers = 1;                 // W' actually usable
};

// 2*W' near-equal blocks (thickness difference <= 1 cell), thinned down to
// W' = 1 (two blocks, run sequentially) when box_z cannot carry 2*W blocks
// of minimum thickness.
ColorPartition build_color_partition(const BoxSpec& b, int workers,
                                     double cutoff);

struct ForceEnergies {
  double embedding = 0.0;  // sum of F(rho_bar) over non-ghost atoms, eV
  double pair = 0.0;       // half-sum of phi over pairs, eV
};

// Serial contracts (used directly by tests; the parallel pass reuses their
// kernels block by block):
//
// compute_density: zero rho accumulators, sum rho(r) over all pairs within
// the potential cutoff (symmetric adds), fold ghost accumulations back to
// their source atoms.
void compute_density(LatticeStore& store, const OffsetIndex& idx,
                     const EamPotential& pot);

// compute_embedding_derivative: cache dF = F'(rho_bar) on every non-ghost
// atom, push dF out to ghost images, return total embedding energy.
double compute_embedding_derivative(LatticeStore& store,
                                    const EamPotential& pot);

// compute_pair_forces: zero force accumulators, accumulate
//   f_ij = -[(dF_i + dF_j) * rho'(r) + phi'(r)] * (r_i - r_j)/r
// with exact antisymmetry, fold ghost forces back; returns pair energy.
double compute_pair_forces(LatticeStore& store, const OffsetIndex& idx,
                           const EamPotential& pot);

// Pair phase scheduled over the colored blocks (red fork-join, then blue);
// clash atoms run serially on the coordinating thread.  Requires density
// and embedding derivatives to be current, ghosts included.
double parallel_force_pass(LatticeStore& store, const OffsetIndex& idx,
                           const EamPotential& pot, const ColorPartition& part,
                           WorkerPool& pool);

// Full pipeline: density -> embedding -> pair forces, all three phases
// scheduled over the partition.  This is what the integrator calls.
ForceEnergies eval_forces(LatticeStore& store, const OffsetIndex& idx,
                          const EamPotential& pot, const ColorPartition& part,
                          WorkerPool& pool);

}  // namespace cascademd
