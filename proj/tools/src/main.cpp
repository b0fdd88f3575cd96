#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cascademd/analysis.h"
#include "cascademd/config.h"
#include "cascademd/sim.h"
#include "cascademd/synthetic.h"
#include "cascademd/units.h"

namespace {

using namespace cascademd;

int cmd_run(const std::string& cfg_path,
            const std::vector<std::string>& overrides, bool quiet) {
  const SimConfig cfg = load_config(cfg_path, overrides);
  Simulation sim(cfg);
  if (!quiet) {
    std::printf("box %ldx%ldx%ld cells, %ld atoms, workers %d (partition %d)\n",
                cfg.box_x, cfg.box_y, cfg.box_z, sim.store().atom_count(),
                cfg.workers, sim.partition().workers);
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    sim.run(quiet ? nullptr : stdout);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const std::string dump = sim.post_mortem_path();
    if (!dump.empty()) {
      std::fprintf(stderr, "post-mortem snapshot: %s\n", dump.c_str());
    }
    return 1;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const auto& series = sim.series();
  long peak = 0;
  double peak_t = 0.0;
  for (const DefectSample& s : series) {
    if (s.defects.frenkel_pairs > peak) {
      peak = s.defects.frenkel_pairs;
      peak_t = s.t_ps;
    }
  }
  std::printf("done: %ld steps, %s ps simulated, %.2f s wall\n",
              sim.state().step, csv_time(sim.state().t).c_str(), wall);
  std::printf("frenkel pairs: peak %ld at %s ps, final %ld\n", peak,
              csv_time(peak_t).c_str(),
              series.empty() ? 0L : series.back().defects.frenkel_pairs);
  if (cfg.pka.energy_kev > 0.0) {
    std::printf("nrt estimate: %.3g displacements (Ed=%g eV)\n",
                nrt_displacements(cfg.pka.energy_kev * 1000.0,
                                  cfg.displacement_energy),
                cfg.displacement_energy);
  }
  if (!cfg.output.timeseries.empty()) {
    std::printf("timeseries: %s\n", cfg.output.timeseries.c_str());
  }
  if (!cfg.output.snapshot_prefix.empty()) {
    std::printf("final snapshot: %s_final.xyz\n",
                cfg.output.snapshot_prefix.c_str());
  }
  return 0;
}

int cmd_bench_mem(const std::string& cfg_path,
                  const std::vector<std::string>& overrides) {
  const SimConfig cfg = load_config(cfg_path, overrides);
  Simulation sim(cfg);
  const LatticeStore& s = sim.store();
  const OffsetIndex& idx = sim.offsets();

  const std::size_t slot_bytes = s.slots.size() * sizeof(AtomRecord);
  std::size_t clash_atoms = 0, clash_bytes = 0;
  for (const auto& kv : s.clash) {
    clash_atoms += kv.second.size();
    // records plus an allowance for the tree node and vector header
    clash_bytes += kv.second.capacity() * sizeof(AtomRecord) + 64;
  }
  const std::size_t ghost_bytes =
      s.ghosts.size() * sizeof(GhostLink) +
      s.ghost_site_ids.size() * sizeof(LatticeId);
  const std::size_t offset_bytes =
      (idx.even_full.size() + idx.odd_full.size() + idx.even_half.size() +
       idx.odd_half.size()) *
      sizeof(LatticeId);
  const std::size_t total =
      slot_bytes + clash_bytes + ghost_bytes + offset_bytes;
  const long atoms = s.atom_count();

  std::printf("atoms: %ld\n", atoms);
  std::printf("record: %zu bytes (budget 128)\n", sizeof(AtomRecord));
  std::printf("slots: %zu records, %zu bytes\n", s.slots.size(), slot_bytes);
  std::printf("clash: %zu atoms in %zu buckets, %zu bytes\n", clash_atoms,
              s.clash.size(), clash_bytes);
  std::printf("ghost links: %zu entries, %zu bytes\n", s.ghosts.size(),
              ghost_bytes);
  std::printf("offset lists: %zu bytes\n", offset_bytes);
  std::printf("total structure bytes: %zu\n", total);
  std::printf("bytes/atom: %.1f\n",
              static_cast<double>(total) / static_cast<double>(atoms));
  return 0;
}

int cmd_gen_potential(const std::string& out_path, long nrho, long nr) {
  synthetic::write_table(out_path, nrho, nr);
  const EamPotential pot = parse_potential_file(out_path);
  std::printf("wrote %s (Nrho=%ld, Nr=%ld, cutoff %g A); parse check OK\n",
              out_path.c_str(), nrho, nr, pot.cutoff);
  return 0;
}

int cmd_check(const std::string& cfg_path,
              const std::vector<std::string>& overrides) {
  const SimConfig cfg = load_config(cfg_path, overrides);
  const EamPotential pot = parse_potential_file(cfg.potential_path);
  const double a0 = cfg.a0 > 0.0 ? cfg.a0 : pot.lattice_const;
  const double index_cutoff = pot.cutoff + 0.3 * a0;
  const long gw = cfg.ghost_width > 0
                      ? cfg.ghost_width
                      : static_cast<long>(std::ceil(index_cutoff / a0));
  const BoxSpec box{cfg.box_x, cfg.box_y, cfg.box_z, a0, gw};
  if (!box.valid()) throw std::invalid_argument("box: invalid dimensions");
  const OffsetIndex idx = build_offsets(box, index_cutoff);
  const ColorPartition part =
      build_color_partition(box, cfg.workers, index_cutoff);

  std::printf("config OK: box %ldx%ldx%ld cells, %ld atoms\n", cfg.box_x,
              cfg.box_y, cfg.box_z, 2 * cfg.box_x * cfg.box_y * cfg.box_z);
  std::printf("potential: Z=%d, %.4g amu, cutoff %g A, a0 %g A\n",
              pot.atomic_number, pot.mass, pot.cutoff, a0);
  std::printf("ghost width: %ld cells; index cutoff %.4g A\n", gw,
              index_cutoff);
  std::printf("offsets per site: even %zu (half %zu), odd %zu (half %zu)\n",
              idx.even_full.size(), idx.even_half.size(), idx.odd_full.size(),
              idx.odd_half.size());
  std::printf("partition: %d of %d workers, %zu blocks:", part.workers,
              cfg.workers, part.blocks.size());
  for (const ColorBlock& b : part.blocks) {
    std::printf(" %s[%ld,%ld)", b.color == 0 ? "red" : "blue",
                b.z_lo - gw, b.z_hi - gw);
  }
  std::printf("\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collision-cascade molecular dynamics on a lattice-hash store"};
  app.require_subcommand(1);

  std::string cfg_path;
  std::vector<std::string> overrides;
  bool quiet = false;
  std::string out_path = "Fe-synthetic.eam";
  long nrho = 5000, nr = 5000;

  CLI::App* run = app.add_subcommand("run", "run a cascade simulation");
  run->add_option("--config", cfg_path, "config file (key = value lines)")
      ->required();
  run->add_option("--set", overrides, "override a config key (key=value)");
  run->add_flag("--quiet", quiet, "suppress per-interval log lines");

  CLI::App* bench =
      app.add_subcommand("bench-mem", "report data-structure bytes per atom");
  bench->add_option("--config", cfg_path, "config file")->required();
  bench->add_option("--set", overrides, "override a config key (key=value)");

  CLI::App* gen = app.add_subcommand(
      "gen-potential", "write the synthetic single-element potential table");
  gen->add_option("--output", out_path, "output path");
  gen->add_option("--nrho", nrho, "embedding knot count");
  gen->add_option("--nr", nr, "radial knot count");

  CLI::App* check = app.add_subcommand(
      "check", "validate config, potential, and derived structures");
  check->add_option("--config", cfg_path, "config file")->required();
  check->add_option("--set", overrides, "override a config key (key=value)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) return cmd_run(cfg_path, overrides, quiet);
    if (app.got_subcommand(bench)) return cmd_bench_mem(cfg_path, overrides);
    if (app.got_subcommand(gen)) return cmd_gen_potential(out_path, nrho, nr);
    if (app.got_subcommand(check)) return cmd_check(cfg_path, overrides);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
