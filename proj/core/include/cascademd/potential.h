#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "cascademd/spline.h"

namespace cascademd {

// Counters for the out-of-range guards in the hot evaluation paths.  They
// are advisory (reported per step), so relaxed atomics are enough.
struct GuardCounters {
  std::atomic<std::uint64_t> r_underflow{0};
  std::atomic<std::uint64_t> rho_clamp{0};

  GuardCounters() = default;
  GuardCounters(const GuardCounters& o)
      : r_underflow(o.r_underflow.load(std::memory_order_relaxed)),
        rho_clamp(o.rho_clamp.load(std::memory_order_relaxed)) {}
  GuardCounters& operator=(const GuardCounters& o) {
    r_underflow.store(o.r_underflow.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
    rho_clamp.store(o.rho_clamp.load(std::memory_order_relaxed),
                    std::memory_order_relaxed);
    return *this;
  }
};

// Single-species EAM potential: embedding F(rho), electron density rho(r)
// and the pair interaction stored as z(r) = r * phi(r).  All three live in
// cubic spline tables; evaluations are const and thread-safe.
struct EamPotential {
  std::string comment;
  int atomic_number = 0;
  double mass = 0.0;           // amu
  double lattice_const = 0.0;  // Angstrom, from the file header
  std::string lattice_name;
  double cutoff = 0.0;  // Angstrom

  SplineTable embed;  // F(rho), knots at k * drho
  SplineTable zr;     // z(r), knots at (k+1) * dr, last knot == cutoff
  SplineTable dens;   // rho(r), same grid as zr

  mutable GuardCounters guards;

  double r_min() const { return zr.x0; }
  double rho_max() const { return embed.x_last(); }

  // rho(r) and its derivative; r below the first knot evaluates at the
  // first knot (short-range guard, counted)
  SplineEval density(double r) const;

  // phi(r) and its derivative via phi = z/r, phi' = (z'r - z)/r^2; throws
  // std::domain_error for r <= 0
  SplineEval pair(double r) const;

  // F(rho_bar) and dF; arguments beyond the table clamp to its ends (counted)
  SplineEval embedding(double rho_bar) const;
};

// funcfl-style single-element ASCII table:
//   line 1: free comment
//   line 2: atomic number, mass (amu), lattice constant (A), lattice name
//   line 3: Nrho  drho  Nr  dr  cutoff
//   then Nrho embedding values, Nr z(r) = r*phi values, Nr density values,
//   whitespace-separated with free line wrapping.
// Malformed input throws std::runtime_error naming the offending line.
EamPotential parse_potential_file(const std::string& path);

}  // namespace cascademd
