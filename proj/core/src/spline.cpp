#include "cascademd/spline.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cascademd {

// Second derivatives M_k at the knots from the tridiagonal not-a-knot
// system; with uniform spacing the substitution of the end conditions
// M_0 = 2M_1 - M_2 and M_{n-1} = 2M_{n-2} - M_{n-3} into the first and last
// interior equations pins M_1 and M_{n-2} directly, leaving a diagonally
// dominant tridiagonal solve for the rest.
SplineTable build_spline(double x0, double h, const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 4) {
    throw std::invalid_argument("build_spline: need at least 4 knots, got " +
                                std::to_string(n));
  }
  if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(x0)) {
    throw std::invalid_argument("build_spline: non-finite or non-positive grid");
  }
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("build_spline: non-finite knot value");
    }
  }

  // r[i] = 6 * second difference / h^2 at interior knots
  std::vector<double> r(n, 0.0);
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    r[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) * inv_h2;
  }

  std::vector<double> m(n, 0.0);
  m[1] = r[1] / 6.0;
  m[n - 2] = r[n - 2] / 6.0;

  if (n > 4) {
    // Thomas solve for m[2..n-3]: diag 4, off-diagonals 1
    const std::size_t lo = 2, hi = n - 3;  // inclusive
    const std::size_t cnt = hi - lo + 1;
    std::vector<double> diag(cnt, 4.0), rhs(cnt);
    for (std::size_t k = 0; k < cnt; ++k) rhs[k] = r[lo + k];
    rhs[0] -= m[1];
    rhs[cnt - 1] -= m[n - 2];
    for (std::size_t k = 1; k < cnt; ++k) {
      const double w = 1.0 / diag[k - 1];
      diag[k] -= w;
      rhs[k] -= w * rhs[k - 1];
    }
    m[lo + cnt - 1] = rhs[cnt - 1] / diag[cnt - 1];
    for (std::size_t k = cnt - 1; k-- > 0;) {
      m[lo + k] = (rhs[k] - m[lo + k + 1]) / diag[k];
    }
  }

  m[0] = 2.0 * m[1] - m[2];
  m[n - 1] = 2.0 * m[n - 2] - m[n - 3];

  SplineTable s;
  s.x0 = x0;
  s.h = h;
  s.seg.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto& g = s.seg[i];
    g.a = (m[i + 1] - m[i]) / (6.0 * h);
    g.b = 0.5 * m[i];
    g.c = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    g.d = y[i];
    g.e = 3.0 * g.a;
    g.f = 2.0 * g.b;
    g.g = g.c;
  }
  return s;
}

SplineEval spline_eval(const SplineTable& s, double x) {
  const double last = s.x_last();
  if (x < s.x0) x = s.x0;
  if (x > last) x = last;

  double u = (x - s.x0) / s.h;
  auto i = static_cast<std::ptrdiff_t>(u);
  const auto nseg = static_cast<std::ptrdiff_t>(s.seg.size());
  if (i < 0) i = 0;
  if (i >= nseg) i = nseg - 1;

  const double t = x - (s.x0 + s.h * static_cast<double>(i));
  const auto& g = s.seg[static_cast<std::size_t>(i)];
  return {((g.a * t + g.b) * t + g.c) * t + g.d, (g.e * t + g.f) * t + g.g};
}

}  // namespace cascademd
