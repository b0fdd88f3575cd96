#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cascademd {

struct PkaSpec {
  // corner-sublattice cell of the knock-on atom; -1 means the box center
  long site_x = -1, site_y = -1, site_z = -1;
  double energy_kev = 0.0;  // 0 disables the PKA
  long dir_x = 1, dir_y = 3, dir_z = 5;
};

struct ThermostatSpec {
  bool enabled = false;
  long interval = 10;       // steps between rescales
  long boundary_cells = 0;  // 0 = whole box, else only near the faces
};

struct OutputSpec {
  std::string timeseries;       // defect CSV path; empty = skip
  std::string snapshot_prefix;  // XYZ prefix; empty = skip snapshots
  long snapshot_interval = 0;   // steps; 0 = only the final snapshot
  long defect_interval = 10;    // steps between defect samples; 0 = ends only
};

// Mirrors the config file: one dotted `key = value` per line, # comments.
// Keys: box.x box.y box.z box.a0 box.ghost_width temperature potential
// pka.site pka.energy pka.direction steps max_time dt_max max_disp
// thermostat.mode thermostat.interval thermostat.boundary_cells
// output.timeseries output.snapshot_prefix output.snapshot_interval
// output.defect_interval workers seed equilibration_steps
// displacement_energy
struct SimConfig {
  long box_x = 10, box_y = 10, box_z = 10;  // cells per axis
  double a0 = 0.0;       // Angstrom; 0 = lattice constant from the potential
  long ghost_width = 0;  // cells; 0 = derived from the index cutoff
  double temperature = 0.0;  // K
  std::string potential_path;
  PkaSpec pka;
  long steps = 0;         // step cap; 0 = none
  double max_time = 0.0;  // ps simulated cap; 0 = none
  double dt_max = 1e-3;   // ps
  double max_disp = 0.05;  // Angstrom per step, caps the adaptive dt
  ThermostatSpec thermostat;
  OutputSpec output;
  int workers = 1;
  std::uint64_t seed = 12345;
  long equilibration_steps = 0;  // thermal steps before the PKA
  double displacement_energy = 40.0;  // eV, threshold for the NRT estimate
};

// set one key; throws std::invalid_argument flagged with the key name
void apply_config_entry(SimConfig& cfg, const std::string& key,
                        const std::string& value);

// parse config text; errors report origin:line
void parse_config_text(SimConfig& cfg, const std::string& text,
                       const std::string& origin);

// defaults, then CASCADE_WORKERS, then the file, then `key=value` overrides;
// validates before returning
SimConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides);

// range/consistency checks; throws std::invalid_argument naming the key
void validate_config(const SimConfig& cfg);

}  // namespace cascademd
