#include "cascademd/config.h"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cascademd {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw std::invalid_argument(key + ": " + why);
}

long parse_long(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0') {
    bad(key, "expected an integer, got '" + v + "'");
  }
  return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos) {
    bad(key, "expected an unsigned integer, got '" + v + "'");
  }
  return x;
}

double parse_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (errno != 0 || end == v.c_str() || *end != '\0') {
    bad(key, "expected a number, got '" + v + "'");
  }
  return x;
}

void parse_triple(const std::string& key, const std::string& v, long out[3]) {
  std::string spaced = v;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(spaced);
  if (!(in >> out[0] >> out[1] >> out[2])) {
    bad(key, "expected three integers, got '" + v + "'");
  }
  std::string rest;
  if (in >> rest) bad(key, "trailing text '" + rest + "'");
}

}  // namespace

void apply_config_entry(SimConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "box.x") cfg.box_x = parse_long(key, value);
  else if (key == "box.y") cfg.box_y = parse_long(key, value);
  else if (key == "box.z") cfg.box_z = parse_long(key, value);
  else if (key == "box.a0") cfg.a0 = parse_double(key, value);
  else if (key == "box.ghost_width") cfg.ghost_width = parse_long(key, value);
  else if (key == "temperature") cfg.temperature = parse_double(key, value);
  else if (key == "potential") cfg.potential_path = value;
  else if (key == "pka.site") {
    long t[3];
    parse_triple(key, value, t);
    cfg.pka.site_x = t[0];
    cfg.pka.site_y = t[1];
    cfg.pka.site_z = t[2];
  } else if (key == "pka.energy") cfg.pka.energy_kev = parse_double(key, value);
  else if (key == "pka.direction") {
    long t[3];
    parse_triple(key, value, t);
    cfg.pka.dir_x = t[0];
    cfg.pka.dir_y = t[1];
    cfg.pka.dir_z = t[2];
  } else if (key == "steps") cfg.steps = parse_long(key, value);
  else if (key == "max_time") cfg.max_time = parse_double(key, value);
  else if (key == "dt_max") cfg.dt_max = parse_double(key, value);
  else if (key == "max_disp") cfg.max_disp = parse_double(key, value);
  else if (key == "thermostat.mode") {
    if (value == "off") cfg.thermostat.enabled = false;
    else if (value == "rescale") cfg.thermostat.enabled = true;
    else bad(key, "expected 'off' or 'rescale', got '" + value + "'");
  } else if (key == "thermostat.interval") {
    cfg.thermostat.interval = parse_long(key, value);
  } else if (key == "thermostat.boundary_cells") {
    cfg.thermostat.boundary_cells = parse_long(key, value);
  } else if (key == "output.timeseries") cfg.output.timeseries = value;
  else if (key == "output.snapshot_prefix") cfg.output.snapshot_prefix = value;
  else if (key == "output.snapshot_interval") {
    cfg.output.snapshot_interval = parse_long(key, value);
  } else if (key == "output.defect_interval") {
    cfg.output.defect_interval = parse_long(key, value);
  } else if (key == "workers") {
    cfg.workers = static_cast<int>(parse_long(key, value));
  } else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "equilibration_steps") {
    cfg.equilibration_steps = parse_long(key, value);
  } else if (key == "displacement_energy") {
    cfg.displacement_energy = parse_double(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void parse_config_text(SimConfig& cfg, const std::string& text,
                       const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": empty key");
    }
    try {
      apply_config_entry(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
}

SimConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  SimConfig cfg;

  if (const char* env = std::getenv("CASCADE_WORKERS")) {
    cfg.workers = static_cast<int>(parse_long("CASCADE_WORKERS", env));
  }

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  parse_config_text(cfg, buf.str(), path);

  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("override '" + ov +
                                  "' is not of the form key=value");
    }
    apply_config_entry(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }

  validate_config(cfg);
  return cfg;
}

void validate_config(const SimConfig& cfg) {
  if (cfg.box_x < 1 || cfg.box_y < 1 || cfg.box_z < 1) {
    bad("box.x/box.y/box.z", "box must be at least 1 cell per axis");
  }
  if (cfg.a0 < 0.0) bad("box.a0", "lattice constant cannot be negative");
  if (cfg.ghost_width < 0) bad("box.ghost_width", "cannot be negative");
  if (cfg.temperature < 0.0) bad("temperature", "cannot be negative");
  if (!(cfg.dt_max > 0.0)) bad("dt_max", "must be positive");
  if (!(cfg.max_disp > 0.0)) bad("max_disp", "must be positive");
  if (cfg.a0 > 0.0 && cfg.max_disp >= cfg.a0 / 2.0) {
    bad("max_disp", "must stay below half the lattice constant");
  }
  if (cfg.pka.energy_kev < 0.0) bad("pka.energy", "cannot be negative");
  if (cfg.pka.energy_kev > 0.0 && cfg.pka.dir_x == 0 && cfg.pka.dir_y == 0 &&
      cfg.pka.dir_z == 0) {
    bad("pka.direction", "must not be the zero vector");
  }
  const bool site_default = cfg.pka.site_x < 0 && cfg.pka.site_y < 0 &&
                            cfg.pka.site_z < 0;
  if (!site_default) {
    if (cfg.pka.site_x < 0 || cfg.pka.site_y < 0 || cfg.pka.site_z < 0 ||
        cfg.pka.site_x >= cfg.box_x || cfg.pka.site_y >= cfg.box_y ||
        cfg.pka.site_z >= cfg.box_z) {
      bad("pka.site", "cell must lie inside the box");
    }
  }
  if (cfg.steps < 0) bad("steps", "cannot be negative");
  if (cfg.max_time < 0.0) bad("max_time", "cannot be negative");
  if (cfg.thermostat.interval < 1) bad("thermostat.interval", "must be >= 1");
  if (cfg.thermostat.boundary_cells < 0) {
    bad("thermostat.boundary_cells", "cannot be negative");
  }
  if (cfg.output.snapshot_interval < 0) {
    bad("output.snapshot_interval", "cannot be negative");
  }
  if (cfg.output.defect_interval < 0) {
    bad("output.defect_interval", "cannot be negative");
  }
  if (cfg.workers < 1) bad("workers", "must be >= 1");
  if (cfg.equilibration_steps < 0) {
    bad("equilibration_steps", "cannot be negative");
  }
  if (!(cfg.displacement_energy > 0.0)) {
    bad("displacement_energy", "must be positive");
  }
}

}  // namespace cascademd
