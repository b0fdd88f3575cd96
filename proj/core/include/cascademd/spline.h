#pragma once

#include <cstddef>
#include <vector>

namespace cascademd {

// Uniform-grid cubic interpolation table.  Each segment stores the value
// polynomial a*t^3 + b*t^2 + c*t + d (t = x - x_i) together with the
// derivative coefficients (3a, 2b, c), so one lookup serves both channels
// of the evaluation used in the force loops.
//
// Boundary condition is not-a-knot (third derivative continuous across the
// first and last interior knots), which reproduces cubic polynomials exactly
// and keeps the interpolant C2 in the interior.
struct SplineTable {
  double x0 = 0.0;  // first knot
  double h = 0.0;   // knot spacing
  struct Seg {
    double a, b, c, d;  // value coefficients
    double e, f, g;     // derivative coefficients: 3a, 2b, c
  };
  std::vector<Seg> seg;  // n-1 segments for n knots

  std::size_t knots() const { return seg.size() + 1; }
  double x_last() const { return x0 + h * static_cast<double>(seg.size()); }
};

struct SplineEval {
  double value;
  double deriv;
};

// y holds the knot values at x0 + k*h, k = 0..n-1; requires n >= 4, h > 0
// and finite values.  Throws std::invalid_argument otherwise.
SplineTable build_spline(double x0, double h, const std::vector<double>& y);

// Evaluate value and derivative.  x outside [x0, x_last] is clamped to the
// nearest endpoint (value and derivative of the boundary segment at that
// knot); callers that must know about clamping check the range themselves.
SplineEval spline_eval(const SplineTable& s, double x);

}  // namespace cascademd
