// Test-only oracles. Everything here is deliberately independent of the
// library implementation paths it is used to check: plain loops, textbook
// quadrature, and frozen formulas.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hobs/heisenberg.hpp"

namespace oracles {

using hobs::Point;

using PointFn = std::function<double(const Point&)>;

// Second-order central difference of f along a direction frozen at p.
inline double directional_central(const PointFn& f, const Point& p,
                                  const std::array<double, 3>& v, double h) {
  const Point fwd{p.x + h * v[0], p.y + h * v[1], p.t + h * v[2]};
  const Point bwd{p.x - h * v[0], p.y - h * v[1], p.t - h * v[2]};
  return (f(fwd) - f(bwd)) / (2.0 * h);
}

// Derivatives along the left-invariant frame: X at q uses (1, 0, 2 y(q)),
// Y uses (0, 1, -2 x(q)), each evaluated at the point where the derivative
// is taken (this matters for nested applications).
inline double x_derivative_fd(const PointFn& f, const Point& p, double h) {
  return directional_central(f, p, {1.0, 0.0, 2.0 * p.y}, h);
}

inline double y_derivative_fd(const PointFn& f, const Point& p, double h) {
  return directional_central(f, p, {0.0, 1.0, -2.0 * p.x}, h);
}

// Adaptive Simpson quadrature (independent copy for oracle use).
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("oracle quadrature failed");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Least-squares slope of log(err) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (err[i] <= 0.0) continue;
    const double lx = std::log(h[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oracles
