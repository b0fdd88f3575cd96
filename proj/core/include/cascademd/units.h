#pragma once

// Metal units: lengths in Angstrom, time in ps, energy in eV, mass in amu,
// temperature in K.  Everything below is derived from the SI definitions of
// eV and amu so the conversion chain stays auditable.

namespace cascademd::units {

inline constexpr double ev_si = 1.602176634e-19;        // J per eV (exact)
inline constexpr double amu_si = 1.66053906660e-27;     // kg per amu
inline constexpr double boltzmann_si = 1.380649e-23;    // J/K (exact)
inline constexpr double angstrom_si = 1e-10;            // m
inline constexpr double picosecond_si = 1e-12;          // s

// Acceleration of 1 amu under 1 eV/A, expressed in A/ps^2.
// (eV/A / amu) in SI is m/s^2; scale by ps^2/A.
inline constexpr double accel_factor =
    (ev_si / angstrom_si / amu_si) * (picosecond_si * picosecond_si) / angstrom_si;

// sqrt(eV/amu) expressed in A/ps; used for v = sqrt(2E/m) style formulas.
// Equals sqrt(accel_factor); kept as a literal so it stays constexpr.
inline constexpr double speed_factor = 98.22694750253277;

// m*v^2 in amu*(A/ps)^2 -> eV.
inline constexpr double mv2_to_ev = 1.0 / accel_factor;

inline constexpr double boltzmann_ev = boltzmann_si / ev_si;  // eV/K

}  // namespace cascademd::units
