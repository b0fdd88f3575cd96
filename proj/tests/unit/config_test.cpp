#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascademd/config.h"
#include "helpers.h"

using namespace cascademd;
using namespace testutil;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("defaults are a valid configuration") {
  SimConfig cfg;
  CHECK(cfg.box_x == 10);
  CHECK(cfg.box_y == 10);
  CHECK(cfg.box_z == 10);
  CHECK(cfg.a0 == 0.0);
  CHECK(cfg.ghost_width == 0);
  CHECK(cfg.temperature == 0.0);
  CHECK(cfg.potential_path.empty());
  CHECK(cfg.pka.site_x == -1);
  CHECK(cfg.pka.site_y == -1);
  CHECK(cfg.pka.site_z == -1);
  CHECK(cfg.pka.energy_kev == 0.0);
  CHECK(cfg.pka.dir_x == 1);
  CHECK(cfg.pka.dir_y == 3);
  CHECK(cfg.pka.dir_z == 5);
  CHECK(cfg.steps == 0);
  CHECK(cfg.max_time == 0.0);
  CHECK(cfg.dt_max == 1e-3);
  CHECK(cfg.max_disp == 0.05);
  CHECK(!cfg.thermostat.enabled);
  CHECK(cfg.thermostat.interval == 10);
  CHECK(cfg.thermostat.boundary_cells == 0);
  CHECK(cfg.output.timeseries.empty());
  CHECK(cfg.output.snapshot_prefix.empty());
  CHECK(cfg.output.snapshot_interval == 0);
  CHECK(cfg.output.defect_interval == 10);
  CHECK(cfg.workers == 1);
  CHECK(cfg.seed == 12345);
  CHECK(cfg.equilibration_steps == 0);
  CHECK(cfg.displacement_energy == 40.0);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("apply_config_entry sets every key") {
  SimConfig cfg;
  apply_config_entry(cfg, "box.x", "20");
  apply_config_entry(cfg, "box.y", "16");
  apply_config_entry(cfg, "box.z", "12");
  apply_config_entry(cfg, "box.a0", "2.8553");
  apply_config_entry(cfg, "box.ghost_width", "3");
  apply_config_entry(cfg, "temperature", "600");
  apply_config_entry(cfg, "potential", "Fe.eam");
  apply_config_entry(cfg, "pka.site", "3,4,5");
  apply_config_entry(cfg, "pka.energy", "1.0");
  apply_config_entry(cfg, "pka.direction", "1 3 5");
  apply_config_entry(cfg, "steps", "1000");
  apply_config_entry(cfg, "max_time", "5.0");
  apply_config_entry(cfg, "dt_max", "0.001");
  apply_config_entry(cfg, "max_disp", "0.02");
  apply_config_entry(cfg, "thermostat.mode", "rescale");
  apply_config_entry(cfg, "thermostat.interval", "25");
  apply_config_entry(cfg, "thermostat.boundary_cells", "2");
  apply_config_entry(cfg, "output.timeseries", "out/defects.csv");
  apply_config_entry(cfg, "output.snapshot_prefix", "out/snap");
  apply_config_entry(cfg, "output.snapshot_interval", "100");
  apply_config_entry(cfg, "output.defect_interval", "5");
  apply_config_entry(cfg, "workers", "8");
  apply_config_entry(cfg, "seed", "987654321");
  apply_config_entry(cfg, "equilibration_steps", "50");
  apply_config_entry(cfg, "displacement_energy", "35");

  CHECK(cfg.box_x == 20);
  CHECK(cfg.box_y == 16);
  CHECK(cfg.box_z == 12);
  CHECK(cfg.a0 == 2.8553);
  CHECK(cfg.ghost_width == 3);
  CHECK(cfg.temperature == 600.0);
  CHECK(cfg.potential_path == "Fe.eam");
  CHECK(cfg.pka.site_x == 3);
  CHECK(cfg.pka.site_y == 4);
  CHECK(cfg.pka.site_z == 5);
  CHECK(cfg.pka.energy_kev == 1.0);
  CHECK(cfg.pka.dir_x == 1);
  CHECK(cfg.pka.dir_y == 3);
  CHECK(cfg.pka.dir_z == 5);
  CHECK(cfg.steps == 1000);
  CHECK(cfg.max_time == 5.0);
  CHECK(cfg.dt_max == 0.001);
  CHECK(cfg.max_disp == 0.02);
  CHECK(cfg.thermostat.enabled);
  CHECK(cfg.thermostat.interval == 25);
  CHECK(cfg.thermostat.boundary_cells == 2);
  CHECK(cfg.output.timeseries == "out/defects.csv");
  CHECK(cfg.output.snapshot_prefix == "out/snap");
  CHECK(cfg.output.snapshot_interval == 100);
  CHECK(cfg.output.defect_interval == 5);
  CHECK(cfg.workers == 8);
  CHECK(cfg.seed == 987654321);
  CHECK(cfg.equilibration_steps == 50);
  CHECK(cfg.displacement_energy == 35.0);

  apply_config_entry(cfg, "thermostat.mode", "off");
  CHECK(!cfg.thermostat.enabled);
}

TEST_CASE("apply_config_entry rejects malformed values") {
  SimConfig cfg;
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "steps", "ten"),
                       doctest::Contains("expected an integer, got 'ten'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "steps", "12x"),
                       doctest::Contains("expected an integer"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "temperature", "warm"),
                       doctest::Contains("expected a number, got 'warm'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "seed", "-4"),
                       doctest::Contains("expected an unsigned integer"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "pka.site", "1 2"),
                       doctest::Contains("expected three integers, got '1 2'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "pka.direction", "1 2 3 4"),
                       doctest::Contains("trailing text '4'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "thermostat.mode", "langevin"),
                       doctest::Contains("expected 'off' or 'rescale', got 'langevin'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "cutoff", "5.6"),
                       doctest::Contains("unknown config key 'cutoff'"),
                       std::invalid_argument);
}

TEST_CASE("parse_config_text handles comments and flags bad lines") {
  SimConfig cfg;
  parse_config_text(cfg,
                    "# cascade setup\n"
                    "\n"
                    "box.x = 8   # eight cells\n"
                    "  temperature=300\n"
                    "pka.site = 1, 2, 3\n",
                    "test.cfg");
  CHECK(cfg.box_x == 8);
  CHECK(cfg.temperature == 300.0);
  CHECK(cfg.pka.site_x == 1);
  CHECK(cfg.pka.site_y == 2);
  CHECK(cfg.pka.site_z == 3);

  CHECK_THROWS_WITH_AS(parse_config_text(cfg, "box.x = 8\nsteps 100\n", "t.cfg"),
                       doctest::Contains("t.cfg:2: expected 'key = value'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text(cfg, "= 5\n", "t.cfg"),
                       doctest::Contains("t.cfg:1: empty key"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text(cfg, "\n\nsteps = soon\n", "t.cfg"),
                       doctest::Contains("t.cfg:3: steps: expected an integer"),
                       std::invalid_argument);
}

TEST_CASE("load_config layers env, file, and overrides in order") {
  const std::string path = temp_path("layered.cfg");
  write_file(path,
             "box.x = 6\n"
             "box.y = 6\n"
             "box.z = 6\n"
             "temperature = 150\n");

  unsetenv("CASCADE_WORKERS");
  SimConfig cfg = load_config(path, {});
  CHECK(cfg.workers == 1);
  CHECK(cfg.box_x == 6);
  CHECK(cfg.temperature == 150.0);

  setenv("CASCADE_WORKERS", "9", 1);
  cfg = load_config(path, {});
  CHECK(cfg.workers == 9);

  // the file beats the environment
  write_file(path,
             "box.x = 6\n"
             "workers = 4\n");
  cfg = load_config(path, {});
  CHECK(cfg.workers == 4);

  // overrides beat both, and several may stack
  cfg = load_config(path, {"workers=2", "temperature = 700"});
  CHECK(cfg.workers == 2);
  CHECK(cfg.temperature == 700.0);

  CHECK_THROWS_WITH_AS(load_config(path, {"workers"}),
                       doctest::Contains("override 'workers' is not of the form key=value"),
                       std::invalid_argument);

  setenv("CASCADE_WORKERS", "lots", 1);
  CHECK_THROWS_WITH_AS(load_config(path, {}),
                       doctest::Contains("CASCADE_WORKERS: expected an integer"),
                       std::invalid_argument);
  unsetenv("CASCADE_WORKERS");

  std::remove(path.c_str());
  CHECK_THROWS_WITH_AS(load_config(path, {}), doctest::Contains("cannot open config file"),
                       std::runtime_error);
}

TEST_CASE("load_config validates the final configuration") {
  const std::string path = temp_path("invalid.cfg");
  write_file(path, "box.x = 0\n");
  CHECK_THROWS_WITH_AS(load_config(path, {}),
                       doctest::Contains("box must be at least 1 cell per axis"),
                       std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("validate_config rejects each out-of-range field") {
  const SimConfig base;

  auto expect = [](SimConfig cfg, const char* what) {
    CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains(what),
                         std::invalid_argument);
  };

  {
    SimConfig c = base;
    c.box_y = 0;
    expect(c, "box must be at least 1 cell per axis");
  }
  {
    SimConfig c = base;
    c.a0 = -1.0;
    expect(c, "lattice constant cannot be negative");
  }
  {
    SimConfig c = base;
    c.ghost_width = -1;
    expect(c, "box.ghost_width: cannot be negative");
  }
  {
    SimConfig c = base;
    c.temperature = -10.0;
    expect(c, "temperature: cannot be negative");
  }
  {
    SimConfig c = base;
    c.dt_max = 0.0;
    expect(c, "dt_max: must be positive");
  }
  {
    SimConfig c = base;
    c.max_disp = -0.1;
    expect(c, "max_disp: must be positive");
  }
  {
    SimConfig c = base;
    c.a0 = 2.8553;
    c.max_disp = 1.5;
    expect(c, "must stay below half the lattice constant");
  }
  {
    // a0 = 0 leaves the half-cell bound unknown, so a large max_disp passes
    SimConfig c = base;
    c.max_disp = 1.5;
    CHECK_NOTHROW(validate_config(c));
  }
  {
    SimConfig c = base;
    c.pka.energy_kev = -1.0;
    expect(c, "pka.energy: cannot be negative");
  }
  {
    SimConfig c = base;
    c.pka.energy_kev = 1.0;
    c.pka.dir_x = c.pka.dir_y = c.pka.dir_z = 0;
    expect(c, "must not be the zero vector");
  }
  {
    SimConfig c = base;
    c.pka.site_x = 3;
    c.pka.site_y = -1;
    c.pka.site_z = 3;
    expect(c, "pka.site: cell must lie inside the box");
  }
  {
    SimConfig c = base;
    c.pka.site_x = 10;  // == box_x
    c.pka.site_y = 0;
    c.pka.site_z = 0;
    expect(c, "pka.site: cell must lie inside the box");
  }
  {
    SimConfig c = base;
    c.pka.site_x = 9;
    c.pka.site_y = 0;
    c.pka.site_z = 0;
    CHECK_NOTHROW(validate_config(c));
  }
  {
    SimConfig c = base;
    c.steps = -1;
    expect(c, "steps: cannot be negative");
  }
  {
    SimConfig c = base;
    c.max_time = -0.5;
    expect(c, "max_time: cannot be negative");
  }
  {
    SimConfig c = base;
    c.thermostat.interval = 0;
    expect(c, "thermostat.interval: must be >= 1");
  }
  {
    SimConfig c = base;
    c.thermostat.boundary_cells = -2;
    expect(c, "thermostat.boundary_cells: cannot be negative");
  }
  {
    SimConfig c = base;
    c.output.snapshot_interval = -1;
    expect(c, "output.snapshot_interval: cannot be negative");
  }
  {
    SimConfig c = base;
    c.output.defect_interval = -1;
    expect(c, "output.defect_interval: cannot be negative");
  }
  {
    SimConfig c = base;
    c.workers = 0;
    expect(c, "workers: must be >= 1");
  }
  {
    SimConfig c = base;
    c.equilibration_steps = -3;
    expect(c, "equilibration_steps: cannot be negative");
  }
  {
    SimConfig c = base;
    c.displacement_energy = 0.0;
    expect(c, "displacement_energy: must be positive");
  }
}
