#include <doctest.h>

#include <cmath>

#include "cascademd/units.h"

using namespace cascademd;

TEST_CASE("acceleration factor follows from the SI definitions") {
  const double rebuilt = (units::ev_si / units::angstrom_si / units::amu_si) *
                         (units::picosecond_si * units::picosecond_si) /
                         units::angstrom_si;
  CHECK(units::accel_factor == rebuilt);
  CHECK(units::accel_factor == doctest::Approx(9648.533215665328).epsilon(1e-12));
}

TEST_CASE("speed factor is the square root of the acceleration factor") {
  CHECK(units::speed_factor * units::speed_factor ==
        doctest::Approx(units::accel_factor).epsilon(1e-14));
  CHECK(std::sqrt(units::accel_factor) ==
        doctest::Approx(units::speed_factor).epsilon(1e-15));
}

TEST_CASE("kinetic-energy conversion inverts the acceleration factor") {
  CHECK(units::mv2_to_ev * units::accel_factor == 1.0);
  // 1 amu moving at sqrt(eV/amu) carries exactly 1/2 eV
  const double v = units::speed_factor;
  CHECK(0.5 * 1.0 * v * v * units::mv2_to_ev ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Boltzmann constant in eV per kelvin") {
  CHECK(units::boltzmann_ev ==
        doctest::Approx(8.617333262145179e-05).epsilon(1e-14));
  CHECK(units::boltzmann_ev == units::boltzmann_si / units::ev_si);
}
