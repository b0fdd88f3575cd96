#include "cascademd/synthetic.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace cascademd::synthetic {

double density(double r) {
  if (r >= rho_rc) return 0.0;
  const double t = rho_rc - r;
  return rho_amp * t * t * t;
}

double density_deriv(double r) {
  if (r >= rho_rc) return 0.0;
  const double t = rho_rc - r;
  return -3.0 * rho_amp * t * t;
}

double phi(double r) {
  if (r >= cutoff) return 0.0;
  const double damp = (cutoff - r) / (cutoff - r_nn);
  return pair_amp * std::exp(-pair_slope * (r / r_nn - 1.0)) * damp * damp * damp;
}

double zfun(double r) { return r * phi(r); }

double zfun_deriv(double r) {
  if (r >= cutoff) return 0.0;
  const double e = std::exp(-pair_slope * (r / r_nn - 1.0));
  const double w = cutoff - r_nn;
  const double damp = (cutoff - r) / w;
  const double p = pair_amp * e * damp * damp * damp;
  // d/dr [r * phi]: product rule over the exponential and the cubic damp
  const double dp = p * (-pair_slope / r_nn) -
                    3.0 * pair_amp * e * damp * damp / w;
  return p + r * dp;
}

double embedding(double rho) {
  return -embed_amp * (std::sqrt(rho + embed_reg) - std::sqrt(embed_reg));
}

double embedding_deriv(double rho) {
  return -0.5 * embed_amp / std::sqrt(rho + embed_reg);
}

void write_table(const std::string& path, long nrho, long nr) {
  if (nrho < 4 || nr < 4) {
    throw std::invalid_argument("write_table: need at least 4 knots per table");
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    throw std::runtime_error("write_table: cannot open '" + path + "' for writing");
  }

  std::fprintf(f,
               "synthetic Fe-like EAM: rho=%.17g*(%.17g-r)^3; "
               "phi=%.17g*exp(-%.17g*(r/%.17g-1))*((%.17g-r)/(%.17g-%.17g))^3; "
               "F=-%.17g*(sqrt(rho+%.17g)-sqrt(%.17g))\n",
               rho_amp, rho_rc, pair_amp, pair_slope, r_nn, cutoff, cutoff,
               r_nn, embed_amp, embed_reg, embed_reg);
  std::fprintf(f, "%d %.17g %.17g bcc\n", atomic_number, mass, a0);

  const double drho = rho_table_max / static_cast<double>(nrho - 1);
  const double dr = cutoff / static_cast<double>(nr);
  std::fprintf(f, "%ld %.17g %ld %.17g %.17g\n", nrho, drho, nr, dr, cutoff);

  auto write_block = [f](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::fprintf(f, "%.17g%c", v[i], (i % 4 == 3) ? '\n' : ' ');
    }
    if (v.size() % 4 != 0) std::fputc('\n', f);
  };

  std::vector<double> block(static_cast<std::size_t>(nrho));
  for (long k = 0; k < nrho; ++k) {
    block[static_cast<std::size_t>(k)] = embedding(drho * static_cast<double>(k));
  }
  write_block(block);

  block.resize(static_cast<std::size_t>(nr));
  for (long k = 0; k < nr; ++k) {
    block[static_cast<std::size_t>(k)] = zfun(dr * static_cast<double>(k + 1));
  }
  write_block(block);

  for (long k = 0; k < nr; ++k) {
    block[static_cast<std::size_t>(k)] = density(dr * static_cast<double>(k + 1));
  }
  write_block(block);

  if (std::fclose(f) != 0) {
    throw std::runtime_error("write_table: write error on '" + path + "'");
  }
}

}  // namespace cascademd::synthetic
