#include "cascademd/sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "cascademd/units.h"

namespace cascademd {
namespace {

// Box-Muller on a seeded mt19937_64: the standard library's normal
// distribution is implementation-defined, this is not, so trajectories
// reproduce across toolchains.
struct Gaussian {
  std::mt19937_64 gen;
  double spare = 0.0;
  bool have = false;

  explicit Gaussian(std::uint64_t seed) : gen(seed) {}

  double uniform01() {  // strictly inside (0,1)
    return static_cast<double>((gen() >> 11) + 1) *
           (1.0 / 9007199254740993.0);
  }
  double operator()() {
    if (have) {
      have = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double a = 6.283185307179586476925286766559 * uniform01();
    spare = r * std::sin(a);
    have = true;
    return r * std::cos(a);
  }
};

// non-ghost atoms in deterministic order: slots by site id, then clash
// buckets by (site id, index)
template <class Store, class F>
void for_each_atom(Store& s, F&& f) {
  for_each_interior_id(s.box, [&](LatticeId id) {
    auto& a = s.slots[id];
    if (a.valid) f(id, a);
  });
  for (auto& kv : s.clash) {
    if (is_ghost(kv.first, s.box)) continue;
    for (auto& a : kv.second) f(kv.first, a);
  }
}

EamPotential load_potential(const SimConfig& cfg) {
  if (cfg.potential_path.empty()) {
    throw std::invalid_argument("potential: no potential file configured");
  }
  return parse_potential_file(cfg.potential_path);
}

BoxSpec make_box(const SimConfig& cfg, const EamPotential& pot) {
  validate_config(cfg);
  const double a0 = cfg.a0 > 0.0 ? cfg.a0 : pot.lattice_const;
  if (!(a0 > 0.0)) {
    throw std::invalid_argument(
        "box.a0: the potential file carries no usable lattice constant");
  }
  if (cfg.max_disp >= a0 / 2.0) {
    throw std::invalid_argument(
        "max_disp: must stay below half the lattice constant");
  }
  const double index_cutoff = pot.cutoff + 0.3 * a0;
  const long gw = cfg.ghost_width > 0
                      ? cfg.ghost_width
                      : static_cast<long>(std::ceil(index_cutoff / a0));
  return BoxSpec{cfg.box_x, cfg.box_y, cfg.box_z, a0, gw};
}

double index_cutoff_of(const EamPotential& pot, const BoxSpec& b) {
  // one safety skin on top of the force cutoff so thermally displaced
  // atoms are still reached; the force pass rechecks true distances
  return pot.cutoff + 0.3 * b.a0;
}

}  // namespace

double pka_speed(double energy_ev, double mass_amu) {
  if (!(mass_amu > 0.0)) throw std::invalid_argument("mass must be positive");
  if (energy_ev < 0.0) throw std::invalid_argument("energy cannot be negative");
  return std::sqrt(2.0 * energy_ev / mass_amu) * units::speed_factor;
}

double adaptive_dt(double max_speed, const SimConfig& cfg) {
  double dt = cfg.dt_max;
  if (max_speed > 0.0) dt = std::min(dt, cfg.max_disp / max_speed);
  return std::max(dt, 1e-7);
}

long init_bcc(LatticeStore& store, int species, double mass_amu,
              double temperature, std::uint64_t seed) {
  const BoxSpec& b = store.box;
  const double sigma =
      temperature > 0.0
          ? std::sqrt(units::boltzmann_ev * temperature *
                      units::accel_factor / mass_amu)
          : 0.0;
  Gaussian gauss(seed);

  std::uint64_t tag = 0;
  for_each_interior_id(b, [&](LatticeId id) {
    AtomRecord rec;
    rec.position = site_position(id_to_coord(id, b), b);
    rec.velocity = Vec3{sigma * gauss(), sigma * gauss(), sigma * gauss()};
    rec.tag = tag++;
    rec.species = static_cast<std::uint16_t>(species);
    rec.valid = true;
    store.insert(rec);
  });
  if (!store.clash.empty()) {
    throw std::logic_error("perfect lattice produced a hash clash");
  }

  const long n = static_cast<long>(tag);
  Vec3 mean{};
  for_each_atom(store, [&](LatticeId, AtomRecord& a) { mean += a.velocity; });
  mean *= 1.0 / static_cast<double>(n);
  for_each_atom(store, [&](LatticeId, AtomRecord& a) { a.velocity -= mean; });
  return n;
}

Simulation::Simulation(const SimConfig& cfg)
    : Simulation(cfg, load_potential(cfg)) {}

Simulation::Simulation(const SimConfig& cfg, EamPotential pot)
    : cfg_(cfg),
      pot_(std::move(pot)),
      box_(make_box(cfg_, pot_)),
      store_(box_),
      idx_(build_offsets(box_, index_cutoff_of(pot_, box_))),
      part_(build_color_partition(box_, cfg_.workers,
                                  index_cutoff_of(pot_, box_))),
      pool_(part_.workers) {
  init_bcc(store_, pot_.atomic_number, pot_.mass, cfg_.temperature, cfg_.seed);
  store_.fill_ghosts();
  refresh_forces();
  measure();
}

double Simulation::temperature() const {
  const long n = store_.atom_count();
  if (n == 0) return 0.0;
  return 2.0 * state_.kinetic /
         (3.0 * static_cast<double>(n) * units::boltzmann_ev);
}

Vec3 Simulation::total_momentum() const {
  Vec3 p{};
  for_each_atom(store_, [&](LatticeId, const AtomRecord& a) { p += a.velocity; });
  return pot_.mass * p;
}

void Simulation::inject_pka() {
  const PkaSpec& pka = cfg_.pka;
  const long cx = pka.site_x >= 0 ? pka.site_x : cfg_.box_x / 2;
  const long cy = pka.site_y >= 0 ? pka.site_y : cfg_.box_y / 2;
  const long cz = pka.site_z >= 0 ? pka.site_z : cfg_.box_z / 2;
  const LatticeCoord c{2 * (box_.ghost_width + cx), box_.ghost_width + cy,
                       box_.ghost_width + cz};
  const LatticeId id = coord_to_id(c, box_);
  AtomRecord& a = store_.slots[id];
  if (!a.valid) {
    throw std::invalid_argument("pka.site: no atom at cell (" +
                                std::to_string(cx) + "," + std::to_string(cy) +
                                "," + std::to_string(cz) + ")");
  }
  Vec3 dir{static_cast<double>(pka.dir_x), static_cast<double>(pka.dir_y),
           static_cast<double>(pka.dir_z)};
  const double len = dir.norm();
  if (!(len > 0.0)) {
    throw std::invalid_argument("pka.direction: must not be the zero vector");
  }
  const double v = pka_speed(pka.energy_kev * 1000.0, pot_.mass);
  a.velocity = (v / len) * dir;
  measure();
}

void Simulation::thermostat_rescale() {
  const long band = cfg_.thermostat.boundary_cells;
  const long g = box_.ghost_width;
  const auto in_band = [&](LatticeId id) {
    if (band <= 0) return true;
    const LatticeCoord c = id_to_coord(id, box_);
    const long cx = c.x >> 1;
    return cx - g < band || (g + box_.box_x - 1) - cx < band ||
           c.y - g < band || (g + box_.box_y - 1) - c.y < band ||
           c.z - g < band || (g + box_.box_z - 1) - c.z < band;
  };

  double sum_v2 = 0.0;
  long n = 0;
  for_each_atom(store_, [&](LatticeId id, AtomRecord& a) {
    if (!in_band(id)) return;
    sum_v2 += a.velocity.norm2();
    ++n;
  });
  const double measured =
      n > 0 ? pot_.mass * sum_v2 * units::mv2_to_ev /
                  (3.0 * static_cast<double>(n) * units::boltzmann_ev)
            : 0.0;
  if (!(measured > 0.0)) {
    std::fprintf(stderr,
                 "thermostat: measured temperature is zero, skipping\n");
    return;
  }
  const double factor = std::sqrt(cfg_.temperature / measured);
  for_each_atom(store_, [&](LatticeId id, AtomRecord& a) {
    if (in_band(id)) a.velocity *= factor;
  });
  measure();
}

void Simulation::refresh_forces() {
  try {
    const ForceEnergies en = eval_forces(store_, idx_, pot_, part_, pool_);
    state_.pair = en.pair;
    state_.embedding = en.embedding;
  } catch (const std::exception& e) {
    throw std::runtime_error("step " + std::to_string(state_.step) + ": " +
                             e.what());
  }
  state_.r_underflow =
      pot_.guards.r_underflow.load(std::memory_order_relaxed);
  state_.rho_clamp = pot_.guards.rho_clamp.load(std::memory_order_relaxed);
}

void Simulation::measure() {
  double sum_v2 = 0.0, max_v2 = 0.0;
  for_each_atom(store_, [&](LatticeId, AtomRecord& a) {
    const double v2 = a.velocity.norm2();
    sum_v2 += v2;
    max_v2 = std::max(max_v2, v2);
  });
  state_.kinetic = 0.5 * pot_.mass * sum_v2 * units::mv2_to_ev;
  state_.max_speed = std::sqrt(max_v2);
}

void Simulation::step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double half_kick = 0.5 * dt * units::accel_factor / pot_.mass;

  for_each_atom(store_, [&](LatticeId, AtomRecord& a) {
    a.velocity += half_kick * a.force;
    a.position += dt * a.velocity;
  });
  store_.canonicalize_positions();
  store_.update_hash();
  store_.fill_ghosts();
  ++state_.step;
  refresh_forces();

  double sum_v2 = 0.0, max_v2 = 0.0;
  for_each_atom(store_, [&](LatticeId, AtomRecord& a) {
    a.velocity += half_kick * a.force;
    const double v2 = a.velocity.norm2();
    sum_v2 += v2;
    max_v2 = std::max(max_v2, v2);
  });
  state_.kinetic = 0.5 * pot_.mass * sum_v2 * units::mv2_to_ev;
  state_.max_speed = std::sqrt(max_v2);
  state_.t += dt;
  state_.dt = dt;
}

void Simulation::sample_defects() {
  series_.push_back(DefectSample{state_.t, count_defects(store_)});
}

void Simulation::write_snapshot_file(const std::string& suffix) const {
  if (cfg_.output.snapshot_prefix.empty()) return;
  write_snapshot(cfg_.output.snapshot_prefix + suffix, store_, state_.t);
}

std::string Simulation::post_mortem_path() const {
  if (cfg_.output.snapshot_prefix.empty()) return "";
  return cfg_.output.snapshot_prefix + "_postmortem.xyz";
}

void Simulation::run(std::FILE* log) {
  series_.clear();
  sample_defects();
  if (cfg_.output.snapshot_interval > 0) write_snapshot_file("_000000.xyz");

  const auto log_line = [&]() {
    if (!log) return;
    std::fprintf(log,
                 "step %ld  t=%s ps  dt=%.4g  E=%.6f eV  T=%.1f K  FP=%ld\n",
                 state_.step, csv_time(state_.t).c_str(), state_.dt,
                 total_energy(), temperature(),
                 series_.back().defects.frenkel_pairs);
  };

  const auto guarded_step = [&]() {
    try {
      step();
    } catch (...) {
      const std::string dump = post_mortem_path();
      if (!dump.empty()) write_snapshot(dump, store_, state_.t);
      if (!cfg_.output.timeseries.empty()) {
        write_timeseries(cfg_.output.timeseries, series_);
      }
      throw;
    }
  };

  for (long i = 0; i < cfg_.equilibration_steps; ++i) {
    guarded_step();
    if (cfg_.thermostat.enabled &&
        (i + 1) % cfg_.thermostat.interval == 0) {
      thermostat_rescale();
    }
  }
  if (cfg_.pka.energy_kev > 0.0) inject_pka();

  long done = 0;
  bool sampled_last = true;
  while (true) {
    const bool step_cap = cfg_.steps > 0 && done >= cfg_.steps;
    const bool time_cap = cfg_.max_time > 0.0 && state_.t >= cfg_.max_time;
    const bool no_budget = cfg_.steps == 0 && cfg_.max_time == 0.0;
    if (step_cap || time_cap || no_budget) break;
    guarded_step();
    ++done;
    if (cfg_.thermostat.enabled && done % cfg_.thermostat.interval == 0) {
      thermostat_rescale();
    }
    sampled_last = false;
    if (cfg_.output.defect_interval > 0 &&
        done % cfg_.output.defect_interval == 0) {
      sample_defects();
      sampled_last = true;
      log_line();
    }
    if (cfg_.output.snapshot_interval > 0 &&
        done % cfg_.output.snapshot_interval == 0) {
      char suffix[32];
      std::snprintf(suffix, sizeof(suffix), "_%06ld.xyz", done);
      write_snapshot_file(suffix);
    }
  }
  if (!sampled_last) {
    sample_defects();
    log_line();
  }

  if (!cfg_.output.timeseries.empty()) {
    write_timeseries(cfg_.output.timeseries, series_);
  }
  write_snapshot_file("_final.xyz");
}

}  // namespace cascademd
