#include "cascademd/forces.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cascademd {
namespace {

// closer than 1e-6 A is a blown-up trajectory, not physics
constexpr double overlap_r2 = 1e-12;

// First overlap seen anywhere in a pass.  Worker threads only set a flag and
// a message; the coordinating thread throws after the join, so the exception
// never crosses a thread boundary.
struct FatalNote {
  std::atomic<bool> hit{false};
  std::mutex mu;
  std::string detail;

  void report(const AtomRecord& a, const AtomRecord& b, double r2) {
    if (hit.exchange(true, std::memory_order_relaxed)) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "atoms %llu and %llu overlap (separation %.3e A)",
                  static_cast<unsigned long long>(a.tag),
                  static_cast<unsigned long long>(b.tag), std::sqrt(r2));
    std::lock_guard<std::mutex> lk(mu);
    detail = buf;
  }
  void raise_if_hit() const {
    if (hit.load(std::memory_order_relaxed)) throw std::runtime_error(detail);
  }
};

struct PhaseCtx {
  LatticeStore& s;
  const OffsetIndex& idx;
  const EamPotential& pot;
  FatalNote& fatal;
  double cut2;
};

void check_cutoffs(const OffsetIndex& idx, const EamPotential& pot) {
  if (idx.cutoff < pot.cutoff) {
    throw std::invalid_argument(
        "offset index cutoff is smaller than the potential cutoff");
  }
}

// The schedule is only conflict-free if the blocks tile the interior in
// ascending z with alternating colors, and (when blocks of one color run
// concurrently) every block is at least as thick as the half lists reach.
void check_partition(const ColorPartition& part, const BoxSpec& b,
                     const OffsetIndex& idx) {
  if (part.blocks.empty() || part.workers < 1) {
    throw std::invalid_argument("empty color partition");
  }
  long z = b.ghost_width;
  for (std::size_t i = 0; i < part.blocks.size(); ++i) {
    const ColorBlock& blk = part.blocks[i];
    if (blk.z_lo != z || blk.z_hi < blk.z_lo) {
      throw std::invalid_argument("color blocks must tile the interior z range");
    }
    if (blk.color != static_cast<int>(i % 2)) {
      throw std::invalid_argument("block colors must alternate starting red");
    }
    z = blk.z_hi;
  }
  if (z != b.ghost_width + b.box_z) {
    throw std::invalid_argument("color blocks must cover the whole interior");
  }
  if (part.workers > 1) {
    for (const ColorBlock& blk : part.blocks) {
      if (blk.z_hi - blk.z_lo < idx.z_reach) {
        throw std::invalid_argument(
            "color blocks thinner than the interaction reach");
      }
    }
  }
}

void zero_rho(LatticeStore& s) {
  for (AtomRecord& rec : s.slots) {
    if (rec.valid) rec.rho_bar = 0.0;
  }
  for (auto& kv : s.clash) {
    for (AtomRecord& rec : kv.second) rec.rho_bar = 0.0;
  }
}

void zero_force(LatticeStore& s) {
  for (AtomRecord& rec : s.slots) {
    if (rec.valid) rec.force = Vec3{};
  }
  for (auto& kv : s.clash) {
    for (AtomRecord& rec : kv.second) rec.force = Vec3{};
  }
}

// Slot-slot pairs for sites with z in [z_lo, z_hi): half offset lists, both
// sides updated per visit.  Ghost partners accumulate too and are folded
// back to their sources after the pass.  This is the hot path; it touches
// no clash bucket.
void density_slots(const PhaseCtx& c, long z_lo, long z_hi) {
  const BoxSpec& b = c.s.box;
  const long g = b.ghost_width;
  const long tx2 = 2 * b.total_x();
  for (long z = z_lo; z < z_hi; ++z) {
    for (long y = g; y < g + b.box_y; ++y) {
      const LatticeId row = (static_cast<LatticeId>(z) * b.total_y() + y) * tx2;
      for (long x = 2 * g; x < 2 * (g + b.box_x); ++x) {
        const LatticeId id = row + x;
        AtomRecord& a = c.s.slots[id];
        if (!a.valid) continue;
        for (const LatticeId off : c.idx.half(x & 1)) {
          AtomRecord& p = c.s.slots[id + off];
          if (!p.valid) continue;
          const Vec3 d = a.position - p.position;
          const double r2 = d.norm2();
          if (r2 > c.cut2) continue;
          if (r2 < overlap_r2) {
            c.fatal.report(a, p, r2);
            continue;
          }
          const double rho = c.pot.density(std::sqrt(r2)).value;
          a.rho_bar += rho;
          p.rho_bar += rho;
        }
      }
    }
  }
}

double pair_slots(const PhaseCtx& c, long z_lo, long z_hi) {
  const BoxSpec& b = c.s.box;
  const long g = b.ghost_width;
  const long tx2 = 2 * b.total_x();
  double energy = 0.0;
  for (long z = z_lo; z < z_hi; ++z) {
    for (long y = g; y < g + b.box_y; ++y) {
      const LatticeId row = (static_cast<LatticeId>(z) * b.total_y() + y) * tx2;
      for (long x = 2 * g; x < 2 * (g + b.box_x); ++x) {
        const LatticeId id = row + x;
        AtomRecord& a = c.s.slots[id];
        if (!a.valid) continue;
        for (const LatticeId off : c.idx.half(x & 1)) {
          AtomRecord& p = c.s.slots[id + off];
          if (!p.valid) continue;
          const Vec3 d = a.position - p.position;
          const double r2 = d.norm2();
          if (r2 > c.cut2) continue;
          if (r2 < overlap_r2) {
            c.fatal.report(a, p, r2);
            continue;
          }
          const double r = std::sqrt(r2);
          const SplineEval ph = c.pot.pair(r);
          const SplineEval de = c.pot.density(r);
          const double fp = -((a.df + p.df) * de.deriv + ph.deriv) / r;
          const Vec3 f = fp * d;
          a.force += f;
          p.force -= f;
          energy += ph.value;
        }
      }
    }
  }
  return energy;
}

// Every pair with at least one clash atom, visited from the clash side.
// Partner classes and who updates whom:
//   - any slot atom (incl. ghost images): symmetric here, since the slot
//     pass never looks at clash buckets; ghost accumulation folds back
//   - interior clash atom: symmetric once, ordered by (bucket id, index)
//   - ghost clash image: one-sided; its interior source adds its own share
//     when it meets this atom's own ghost image from the other boundary
// The callback gets (atom, partner, displacement, r2, symmetric) and must
// leave the partner untouched when symmetric is false.
template <class F>
void visit_clash_pairs(const PhaseCtx& c, F&& f) {
  const BoxSpec& b = c.s.box;
  for (auto& kv : c.s.clash) {
    const LatticeId id = kv.first;
    if (is_ghost(id, b)) continue;  // ghost images never drive a visit
    auto& bucket = kv.second;
    const bool odd = (id_to_coord(id, b).x & 1) != 0;
    const std::vector<LatticeId>& offs = c.idx.full(odd);
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      AtomRecord& atom = bucket[i];
      const auto try_pair = [&](AtomRecord& p, bool symmetric) {
        const Vec3 d = atom.position - p.position;
        const double r2 = d.norm2();
        if (r2 > c.cut2) return;
        if (r2 < overlap_r2) {
          c.fatal.report(atom, p, r2);
          return;
        }
        f(atom, p, d, r2, symmetric);
      };
      AtomRecord& own = c.s.slots[id];
      if (own.valid) try_pair(own, true);
      for (std::size_t j = i + 1; j < bucket.size(); ++j) {
        try_pair(bucket[j], true);
      }
      for (const LatticeId off : offs) {
        const LatticeId nid = id + off;
        AtomRecord& slot = c.s.slots[nid];
        if (slot.valid) try_pair(slot, true);
        const auto it = c.s.clash.find(nid);
        if (it == c.s.clash.end()) continue;
        if (is_ghost(nid, b)) {
          for (AtomRecord& ghost : it->second) try_pair(ghost, false);
        } else if (nid > id) {
          for (AtomRecord& other : it->second) try_pair(other, true);
        }
      }
    }
  }
}

void density_clash(const PhaseCtx& c) {
  visit_clash_pairs(c, [&](AtomRecord& atom, AtomRecord& p, const Vec3&,
                           double r2, bool symmetric) {
    const double rho = c.pot.density(std::sqrt(r2)).value;
    atom.rho_bar += rho;
    if (symmetric) p.rho_bar += rho;
  });
}

double pair_clash(const PhaseCtx& c) {
  double energy = 0.0;
  visit_clash_pairs(c, [&](AtomRecord& atom, AtomRecord& p, const Vec3& d,
                           double r2, bool symmetric) {
    const double r = std::sqrt(r2);
    const SplineEval ph = c.pot.pair(r);
    const SplineEval de = c.pot.density(r);
    const double fp = -((atom.df + p.df) * de.deriv + ph.deriv) / r;
    const Vec3 f = fp * d;
    atom.force += f;
    if (symmetric) {
      p.force -= f;
      energy += ph.value;
    } else {
      energy += 0.5 * ph.value;  // the partner's side adds the other half
    }
  });
  return energy;
}

double embed_slots(LatticeStore& s, const EamPotential& pot, long z_lo,
                   long z_hi) {
  const BoxSpec& b = s.box;
  const long g = b.ghost_width;
  const long tx2 = 2 * b.total_x();
  double energy = 0.0;
  for (long z = z_lo; z < z_hi; ++z) {
    for (long y = g; y < g + b.box_y; ++y) {
      const LatticeId row = (static_cast<LatticeId>(z) * b.total_y() + y) * tx2;
      for (long x = 2 * g; x < 2 * (g + b.box_x); ++x) {
        AtomRecord& a = s.slots[row + x];
        if (!a.valid) continue;
        const SplineEval em = pot.embedding(a.rho_bar);
        a.df = em.deriv;
        energy += em.value;
      }
    }
  }
  return energy;
}

double embed_clash(LatticeStore& s, const EamPotential& pot) {
  double energy = 0.0;
  for (auto& kv : s.clash) {
    if (is_ghost(kv.first, s.box)) continue;
    for (AtomRecord& atom : kv.second) {
      const SplineEval em = pot.embedding(atom.rho_bar);
      atom.df = em.deriv;
      energy += em.value;
    }
  }
  return energy;
}

void fold_rho(LatticeStore& s) {
  for (const GhostLink& gl : s.ghosts) {
    s.at(gl.source).rho_bar += s.at(gl.image).rho_bar;
  }
}

void refresh_ghosts(LatticeStore& s) {
  for (const GhostLink& gl : s.ghosts) {
    const AtomRecord& src = s.at(gl.source);
    AtomRecord& img = s.at(gl.image);
    img.rho_bar = src.rho_bar;
    img.df = src.df;
  }
}

void fold_force(LatticeStore& s) {
  for (const GhostLink& gl : s.ghosts) {
    s.at(gl.source).force += s.at(gl.image).force;
  }
}

// run fn(block, block_index) over every block of one color; blocks of equal
// color are write-disjoint, so they may run on any number of workers
template <class Fn>
void run_wave(WorkerPool& pool, const ColorPartition& part, int color,
              Fn&& fn) {
  std::vector<int> picks;
  for (int i = 0; i < static_cast<int>(part.blocks.size()); ++i) {
    if (part.blocks[i].color == color) picks.push_back(i);
  }
  pool.run([&](int k) { fn(part.blocks[picks[k]], picks[k]); },
           static_cast<int>(picks.size()));
}

double pair_phase(const PhaseCtx& ctx, const ColorPartition& part,
                  WorkerPool& pool) {
  zero_force(ctx.s);
  std::vector<double> partial(part.blocks.size(), 0.0);
  for (int color = 0; color < 2; ++color) {
    run_wave(pool, part, color, [&](const ColorBlock& blk, int bi) {
      partial[bi] = pair_slots(ctx, blk.z_lo, blk.z_hi);
    });
  }
  double energy = 0.0;
  for (const double p : partial) energy += p;  // block order: reproducible
  energy += pair_clash(ctx);
  fold_force(ctx.s);
  ctx.fatal.raise_if_hit();
  return energy;
}

}  // namespace

ColorPartition build_color_partition(const BoxSpec& b, int workers,
                                     double cutoff) {
  if (!b.valid()) throw std::invalid_argument("invalid box");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");

  const long min_t = std::max<long>(1, static_cast<long>(std::ceil(cutoff / b.a0)));
  long usable = std::min<long>(workers, b.box_z / (2 * min_t));
  if (usable < 1) usable = 1;  // too thin for safe pairs: run sequentially

  const long nb = 2 * usable;
  const long base = b.box_z / nb;
  const long rem = b.box_z % nb;

  ColorPartition part;
  part.workers = static_cast<int>(usable);
  long z = b.ghost_width;
  for (long k = 0; k < nb; ++k) {
    const long t = base + (k < rem ? 1 : 0);
    part.blocks.push_back(ColorBlock{z, z + t, static_cast<int>(k % 2)});
    z += t;
  }
  return part;
}

void compute_density(LatticeStore& store, const OffsetIndex& idx,
                     const EamPotential& pot) {
  check_cutoffs(idx, pot);
  FatalNote fatal;
  PhaseCtx ctx{store, idx, pot, fatal, pot.cutoff * pot.cutoff};
  zero_rho(store);
  const long g = store.box.ghost_width;
  density_slots(ctx, g, g + store.box.box_z);
  density_clash(ctx);
  fold_rho(store);
  fatal.raise_if_hit();
}

double compute_embedding_derivative(LatticeStore& store,
                                    const EamPotential& pot) {
  const long g = store.box.ghost_width;
  const double energy = embed_slots(store, pot, g, g + store.box.box_z) +
                        embed_clash(store, pot);
  refresh_ghosts(store);
  return energy;
}

double compute_pair_forces(LatticeStore& store, const OffsetIndex& idx,
                           const EamPotential& pot) {
  check_cutoffs(idx, pot);
  FatalNote fatal;
  PhaseCtx ctx{store, idx, pot, fatal, pot.cutoff * pot.cutoff};
  zero_force(store);
  const long g = store.box.ghost_width;
  double energy = pair_slots(ctx, g, g + store.box.box_z);
  energy += pair_clash(ctx);
  fold_force(store);
  fatal.raise_if_hit();
  return energy;
}

double parallel_force_pass(LatticeStore& store, const OffsetIndex& idx,
                           const EamPotential& pot, const ColorPartition& part,
                           WorkerPool& pool) {
  check_cutoffs(idx, pot);
  check_partition(part, store.box, idx);
  FatalNote fatal;
  PhaseCtx ctx{store, idx, pot, fatal, pot.cutoff * pot.cutoff};
  return pair_phase(ctx, part, pool);
}

ForceEnergies eval_forces(LatticeStore& store, const OffsetIndex& idx,
                          const EamPotential& pot, const ColorPartition& part,
                          WorkerPool& pool) {
  check_cutoffs(idx, pot);
  check_partition(part, store.box, idx);
  FatalNote fatal;
  PhaseCtx ctx{store, idx, pot, fatal, pot.cutoff * pot.cutoff};

  zero_rho(store);
  for (int color = 0; color < 2; ++color) {
    run_wave(pool, part, color, [&](const ColorBlock& blk, int) {
      density_slots(ctx, blk.z_lo, blk.z_hi);
    });
  }
  density_clash(ctx);
  fold_rho(store);
  fatal.raise_if_hit();

  // embedding is per-atom, so one wave over all blocks is already safe
  std::vector<double> partial(part.blocks.size(), 0.0);
  pool.run(
      [&](int i) {
        const ColorBlock& blk = part.blocks[i];
        partial[i] = embed_slots(store, pot, blk.z_lo, blk.z_hi);
      },
      static_cast<int>(part.blocks.size()));
  ForceEnergies en;
  for (const double p : partial) en.embedding += p;
  en.embedding += embed_clash(store, pot);
  refresh_ghosts(store);

  en.pair = pair_phase(ctx, part, pool);
  return en;
}

}  // namespace cascademd
