// Microbenchmarks for the hot paths: site hashing, neighbor gathering,
// rehash-after-motion, ghost rebuild, and the full force pass at several
// worker counts.  Numbers are per-iteration wall times; atom-normalized
// rates are reported as counters where that is the natural unit.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "cascademd/forces.h"
#include "cascademd/lattice.h"
#include "cascademd/neighbors.h"
#include "cascademd/parallel.h"
#include "cascademd/potential.h"
#include "cascademd/sim.h"
#include "cascademd/store.h"
#include "cascademd/synthetic.h"

namespace {

using namespace cascademd;

const EamPotential& bench_potential() {
  static const EamPotential pot = [] {
    const std::string path = "/tmp/cascademd_bench_pot.eam";
    synthetic::write_table(path);
    return parse_potential_file(path);
  }();
  return pot;
}

// thermalized box with ghosts filled, ready for a force pass
LatticeStore make_box(long cells, double temperature, std::uint64_t seed) {
  const EamPotential& pot = bench_potential();
  const long gw = static_cast<long>(
      std::ceil((pot.cutoff + 0.3 * pot.lattice_const) / pot.lattice_const));
  BoxSpec b{cells, cells, cells, pot.lattice_const, gw};
  LatticeStore store(b);
  init_bcc(store, pot.atomic_number, pot.mass, temperature, seed);
  store.fill_ghosts();
  return store;
}

}  // namespace

static void BM_nearest_site(benchmark::State& state) {
  const EamPotential& pot = bench_potential();
  BoxSpec b{12, 12, 12, pot.lattice_const, 3};
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, (b.box_x + 2 * b.ghost_width) * b.a0);
  std::vector<Vec3> pts(4096);
  for (auto& p : pts) p = {u(gen), u(gen), u(gen)};
  for (auto _ : state) {
    LatticeId acc = 0;
    for (const auto& p : pts) acc ^= nearest_site(p, b);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_nearest_site);

static void BM_build_offsets(benchmark::State& state) {
  const EamPotential& pot = bench_potential();
  BoxSpec b{12, 12, 12, pot.lattice_const, 3};
  const double cutoff = pot.cutoff + 0.3 * pot.lattice_const;
  for (auto _ : state) {
    OffsetIndex idx = build_offsets(b, cutoff);
    benchmark::DoNotOptimize(idx);
  }
}
BENCHMARK(BM_build_offsets);

static void BM_neighbors_of(benchmark::State& state) {
  const EamPotential& pot = bench_potential();
  BoxSpec b{12, 12, 12, pot.lattice_const, 3};
  const OffsetIndex idx =
      build_offsets(b, pot.cutoff + 0.3 * pot.lattice_const);
  std::vector<LatticeId> interior;
  for_each_interior_id(b, [&](LatticeId id) { interior.push_back(id); });
  long sum = 0;
  for (auto _ : state) {
    for (LatticeId id : interior) {
      sum += static_cast<long>(neighbors_of(id, idx, b).size());
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(interior.size()));
}
BENCHMARK(BM_neighbors_of);

// one integrator-shaped motion step: displace, wrap, rehash, rebuild ghosts
static void BM_rehash_after_motion(benchmark::State& state) {
  LatticeStore store = make_box(state.range(0), 300.0, 7);
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (auto _ : state) {
    for (auto& rec : store.slots) {
      if (!rec.valid || rec.ghost) continue;
      rec.position += Vec3{u(gen), u(gen), u(gen)};
    }
    store.canonicalize_positions();
    store.update_hash();
    store.fill_ghosts();
    benchmark::DoNotOptimize(store.ghosts.data());
  }
  state.SetItemsProcessed(state.iterations() * store.atom_count());
}
BENCHMARK(BM_rehash_after_motion)->Arg(8)->Arg(12);

static void BM_fill_ghosts(benchmark::State& state) {
  LatticeStore store = make_box(state.range(0), 300.0, 11);
  for (auto _ : state) {
    store.fill_ghosts();
    benchmark::DoNotOptimize(store.ghosts.data());
  }
  state.SetItemsProcessed(state.iterations() * store.atom_count());
}
BENCHMARK(BM_fill_ghosts)->Arg(8)->Arg(12);

// full density -> embedding -> pair pipeline over the colored partition
static void BM_force_pass(benchmark::State& state) {
  const EamPotential& pot = bench_potential();
  const long cells = state.range(0);
  const int workers = static_cast<int>(state.range(1));
  LatticeStore store = make_box(cells, 300.0, 99);
  const double index_cutoff = pot.cutoff + 0.3 * pot.lattice_const;
  const OffsetIndex idx = build_offsets(store.box, index_cutoff);
  const ColorPartition part =
      build_color_partition(store.box, workers, index_cutoff);
  WorkerPool pool(part.workers);
  for (auto _ : state) {
    ForceEnergies e = eval_forces(store, idx, pot, part, pool);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * store.atom_count());
  state.counters["workers"] = static_cast<double>(part.workers);
}
BENCHMARK(BM_force_pass)
    ->Args({8, 1})
    ->Args({12, 1})
    ->Args({12, 2})
    ->Args({12, 4});

BENCHMARK_MAIN();
