#pragma once

#include <string>

// Smooth synthetic Fe-like EAM parameterization so tests and example runs
// do not depend on third-party potential data.  Closed forms:
//
//   rho(r) = rho_amp * (rho_rc - r)^3            for r < rho_rc, else 0
//   phi(r) = pair_amp * exp(-pair_slope*(r/r_nn - 1))
//            * ((cutoff - r)/(cutoff - r_nn))^3  for r < cutoff, else 0
//   z(r)   = r * phi(r)                          (this is what gets tabulated)
//   F(rho) = -embed_amp * (sqrt(rho + embed_reg) - sqrt(embed_reg))
//
// The amplitudes are calibrated so a perfect BCC crystal at a0 has density
// rho_bar = 1, cohesive energy -4.3 eV/atom and zero pressure (dE/da = 0).

namespace cascademd::synthetic {

inline constexpr int atomic_number = 26;
inline constexpr double mass = 55.845;     // amu
inline constexpr double a0 = 2.8553;       // Angstrom
inline constexpr double cutoff = 5.6;      // Angstrom
inline constexpr double r_nn = 2.4727640449591856;  // sqrt(3)/2 * a0

inline constexpr double rho_rc = 4.1;
inline constexpr double rho_amp = 0.02171868164588797;
inline constexpr double pair_slope = 6.5;
inline constexpr double pair_amp = 0.5123847826890735;
inline constexpr double embed_amp = 9.053882773088201;
inline constexpr double embed_reg = 0.09;

inline constexpr double rho_table_max = 4.0;  // embedding table extent

double density(double r);
double density_deriv(double r);
double zfun(double r);  // z(r) = r * phi(r)
double zfun_deriv(double r);
double phi(double r);
double embedding(double rho);
double embedding_deriv(double rho);

// Write the tabulated potential (defaults: 5000 knots per table).  The file
// header records the closed forms with their constants.
void write_table(const std::string& path, long nrho = 5000, long nr = 5000);

}  // namespace cascademd::synthetic
