#pragma once

#include <cstdio>

#include "cascademd/analysis.h"
#include "cascademd/config.h"
#include "cascademd/forces.h"

namespace cascademd {

struct StepState {
  long step = 0;
  double t = 0.0;   // ps elapsed
  double dt = 0.0;  // ps, last step taken
  double kinetic = 0.0;    // eV
  double pair = 0.0;       // eV
  double embedding = 0.0;  // eV
  double max_speed = 0.0;  // A/ps over all atoms, from the last step
  std::uint64_t r_underflow = 0;  // cumulative short-range guard hits
  std::uint64_t rho_clamp = 0;    // cumulative embedding-range guard hits
};

// PKA speed in A/ps for a kinetic energy in eV and mass in amu
double pka_speed(double energy_ev, double mass_amu);

// displacement-capped timestep: min(dt_max, max_disp / max_speed), dt_max
// when at rest, never below 1e-7 ps
double adaptive_dt(double max_speed, const SimConfig& cfg);

// Fill an empty store with a perfect BCC lattice (two atoms per cell, tags
// sequential in site order) and Maxwell-Boltzmann velocities at the given
// temperature; net momentum is removed.  Returns the atom count.
long init_bcc(LatticeStore& store, int species, double mass_amu,
              double temperature, std::uint64_t seed);

// Owns one simulation: potential, store, offset index, color partition,
// worker pool, and the velocity-Verlet loop over them.
class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);     // potential from cfg path
  Simulation(const SimConfig& cfg, EamPotential pot);

  const SimConfig& config() const { return cfg_; }
  const BoxSpec& box() const { return box_; }
  LatticeStore& store() { return store_; }
  const LatticeStore& store() const { return store_; }
  const EamPotential& potential() const { return pot_; }
  const OffsetIndex& offsets() const { return idx_; }
  const ColorPartition& partition() const { return part_; }
  const StepState& state() const { return state_; }
  const std::vector<DefectSample>& series() const { return series_; }

  double temperature() const;   // K, from 2 KE / (3 N kB)
  Vec3 total_momentum() const;  // amu * A/ps
  double total_energy() const {
    return state_.kinetic + state_.pair + state_.embedding;
  }

  // overwrite the configured atom's velocity with the PKA velocity
  void inject_pka();

  // velocity rescale toward cfg.temperature, whole box or boundary band;
  // skips with a warning when the measured temperature is zero
  void thermostat_rescale();

  void step(double dt);  // one velocity-Verlet step at a fixed dt
  void step() { step(adaptive_dt(state_.max_speed, cfg_)); }

  // equilibrate, inject the PKA, then step until the step or time cap,
  // sampling defects and snapshots at the configured intervals and writing
  // the output files at the end; log lines go to `log` when non-null
  void run(std::FILE* log = nullptr);

  std::string post_mortem_path() const;  // snapshot dumped on a fatal step

 private:
  void refresh_forces();  // full force pipeline; tags errors with the step
  void measure();         // kinetic energy and max speed from velocities
  void sample_defects();
  void write_snapshot_file(const std::string& suffix) const;

  SimConfig cfg_;
  EamPotential pot_;
  BoxSpec box_;
  LatticeStore store_;
  OffsetIndex idx_;
  ColorPartition part_;
  WorkerPool pool_;
  StepState state_;
  std::vector<DefectSample> series_;
};

}  // namespace cascademd
