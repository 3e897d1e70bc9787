#include "hobs/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace hobs {

namespace {

// x^q with sqrt-based fast paths for the exponents the solver hits in inner
// loops (q in {0, 1, 1/2, -1/2, 3/4, -1/4, 3/2}).
inline double pow_q(double x, double q) {
  if (q == 0.0) return 1.0;
  if (q == 1.0) return x;
  if (q == 0.5) return std::sqrt(x);
  if (q == -0.5) return 1.0 / std::sqrt(x);
  if (q == 1.5) return x * std::sqrt(x);
  if (q == 0.75) {
    const double r = std::sqrt(x);
    return r * std::sqrt(r);
  }
  if (q == -0.25) return 1.0 / std::sqrt(std::sqrt(x));
  return std::pow(x, q);
}

}  // namespace

void EnergyParams::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("EnergyParams: exponent p must lie in (1, inf)");
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("EnergyParams: eps must be finite and >= 0");
  }
}

void PenaltyParams::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("PenaltyParams: eta must lie in (0, 1)");
  }
  if (!(h.grid == psi.grid)) throw std::invalid_argument("PenaltyParams: grid mismatch");
  if ((h.values < 0.0).any()) {
    throw std::invalid_argument("PenaltyParams: h must be nonnegative");
  }
}

HorizontalField horizontal_gradient(const ScalarField& u) {
  const Grid& g = u.grid;
  HorizontalField out(g);
  for (int it = 0; it < g.nt - 1; ++it) {
    for (int iy = 0; iy < g.ny - 1; ++iy) {
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        const double dx = (u.values[i + 1] - u.values[i]) / g.hx;
        const double dy = (u.values[g.index(ix, iy + 1, it)] - u.values[i]) / g.hy;
        const double dt = (u.values[g.index(ix, iy, it + 1)] - u.values[i]) / g.ht;
        const Point p = g.node(ix, iy, it);
        out.xcomp[i] = dx + 2.0 * p.y * dt;
        out.ycomp[i] = dy - 2.0 * p.x * dt;
      }
    }
  }
  return out;
}

// Scatter the transpose of the gradient stencil; this is what makes the
// discrete integration-by-parts identity exact rather than O(h).
ScalarField horizontal_divergence(const HorizontalField& field) {
  const Grid& g = field.grid;
  ScalarField out(g);
  for (int it = 0; it < g.nt - 1; ++it) {
    for (int iy = 0; iy < g.ny - 1; ++iy) {
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        const Point p = g.node(ix, iy, it);
        const double fx = field.xcomp[i];
        const double fy = field.ycomp[i];
        const double ax = fx / g.hx;
        const double ay = fy / g.hy;
        const double at = (2.0 * p.y * fx - 2.0 * p.x * fy) / g.ht;
        out.values[i] += ax + ay + at;
        out.values[i + 1] -= ax;
        out.values[g.index(ix, iy + 1, it)] -= ay;
        out.values[g.index(ix, iy, it + 1)] -= at;
      }
    }
  }
  return out;
}

double energy(const ScalarField& u, const EnergyParams& params) {
  params.validate();
  const Grid& g = u.grid;
  const HorizontalField grad = horizontal_gradient(u);
  const double q = params.p / 2.0;
  double acc = 0.0;
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        const double s = grad.xcomp[i] * grad.xcomp[i] + grad.ycomp[i] * grad.ycomp[i];
        acc += pow_q(params.eps + s, q);
      }
  return acc * g.cell_weight();
}

double energy(const ScalarField& u, const EnergyParams& params, const Mask& region) {
  params.validate();
  if (!(u.grid == region.grid)) throw std::invalid_argument("energy: grid mismatch");
  const Grid& g = u.grid;
  const HorizontalField grad = horizontal_gradient(u);
  const double q = params.p / 2.0;
  double acc = 0.0;
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        if (!region.values[i]) continue;
        const double s = grad.xcomp[i] * grad.xcomp[i] + grad.ycomp[i] * grad.ycomp[i];
        acc += pow_q(params.eps + s, q);
      }
  return acc * g.cell_weight();
}

HorizontalField flux(const ScalarField& u, const EnergyParams& params) {
  params.validate();
  const Grid& g = u.grid;
  HorizontalField out = horizontal_gradient(u);
  const double eps = params.gradient_eps();
  const double q = params.p / 2.0 - 1.0;
  if (q == 0.0) return out;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double gx = out.xcomp[i];
    const double gy = out.ycomp[i];
    if (gx == 0.0 && gy == 0.0) continue;
    const double factor = pow_q(eps + gx * gx + gy * gy, q);
    out.xcomp[i] = factor * gx;
    out.ycomp[i] = factor * gy;
  }
  return out;
}

ScalarField energy_gradient(const ScalarField& u, const EnergyParams& params) {
  const Grid& g = u.grid;
  ScalarField out = horizontal_divergence(flux(u, params));
  out.values *= -g.cell_weight();
  // Boundary values are pinned by the problems that use this gradient.
  for (int it = 0; it < g.nt; ++it)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        if (g.is_boundary(ix, iy, it)) out.values[g.index(ix, iy, it)] = 0.0;
      }
  return out;
}

ScalarField operator_A(const ScalarField& u, const EnergyParams& params) {
  const Grid& g = u.grid;
  ScalarField out = horizontal_divergence(flux(u, params));
  for (int it = 0; it < g.nt; ++it)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        if (g.is_boundary(ix, iy, it)) out.values[g.index(ix, iy, it)] = 0.0;
      }
  return out;
}

Mask measured_interior_mask(const Grid& g) { return deep_interior_mask(g, 2); }

double truncation_H(double t, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("truncation_H: eta must be positive");
  if (t <= 0.0) return 0.0;
  if (t >= eta) return 1.0;
  return t / eta;
}

PenaltyPoint penalty_value_and_slope(double r, double psi_value, double h_value, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("penalty_value_and_slope: eta must be positive");
  if (!(h_value >= 0.0)) {
    throw std::invalid_argument("penalty_value_and_slope: h must be nonnegative");
  }
  // Antiderivative of sigma -> 1 - H_eta(psi - sigma), zero at sigma = psi - eta.
  const auto anti = [&](double sigma) {
    if (sigma <= psi_value - eta) return 0.0;
    if (sigma < psi_value) {
      const double d = sigma - (psi_value - eta);
      return d * d / (2.0 * eta);
    }
    return eta / 2.0 + (sigma - psi_value);
  };
  PenaltyPoint out;
  out.value = h_value * (anti(r) - anti(0.0));
  out.slope = h_value * (1.0 - truncation_H(psi_value - r, eta));
  return out;
}

ScalarField obstacle_operator_bound(const AnalyticFunction& psi, const Grid& g,
                                    const EnergyParams& params) {
  params.validate();
  ScalarField out(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    out.values[i] = std::max(psi.operator_value(g.node(i), params.p, params.eps), 0.0);
  }
  return out;
}

}  // namespace hobs
