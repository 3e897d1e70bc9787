#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hobs/operator.hpp"
#include "hobs/rng.hpp"
#include "oracles.hpp"

using namespace hobs;

namespace {

ScalarField random_field(const Grid& g, std::uint64_t seed, std::uint64_t k,
                         bool zero_boundary) {
  ScalarField f(g);
  Rng rng = Rng::at(seed, 100, k);
  for (int it = 0; it < g.nt; ++it)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        f.values[i] = (zero_boundary && g.is_boundary(ix, iy, it)) ? 0.0 : rng.uniform(-1, 1);
      }
  return f;
}

HorizontalField random_horizontal(const Grid& g, std::uint64_t seed, std::uint64_t k) {
  HorizontalField f(g);
  Rng rng = Rng::at(seed, 101, k);
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        f.xcomp[i] = rng.uniform(-1, 1);
        f.ycomp[i] = rng.uniform(-1, 1);
      }
  return f;
}

double pairing_grad(const HorizontalField& gu, const HorizontalField& f) {
  const Grid& g = gu.grid;
  double acc = 0.0;
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        acc += gu.xcomp[i] * f.xcomp[i] + gu.ycomp[i] * f.ycomp[i];
      }
  return acc * g.cell_weight();
}

}  // namespace

TEST_CASE("horizontal gradient: constants, linear functions, coordinate-t") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 9, 9, 9);
  ScalarField c(g);
  c.values.setConstant(4.2);
  const HorizontalField gc = horizontal_gradient(c);
  CHECK(gc.xcomp.abs().maxCoeff() == 0.0);
  CHECK(gc.ycomp.abs().maxCoeff() == 0.0);

  const HorizontalField gx = horizontal_gradient(sample(AnalyticFunction::coordinate_x(), g));
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        CHECK(gx.xcomp[i] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(gx.ycomp[i] == 0.0);
      }

  // forward differences are exact on functions linear in t
  const HorizontalField gt = horizontal_gradient(sample(AnalyticFunction::coordinate_t(), g));
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        const Point p = g.node(ix, iy, it);
        CHECK(gt.xcomp[i] == doctest::Approx(2.0 * p.y).epsilon(1e-12));
        CHECK(gt.ycomp[i] == doctest::Approx(-2.0 * p.x).epsilon(1e-12));
      }
}

TEST_CASE("divergence is the exact negative adjoint of the gradient") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 17, 17, 17);
  for (int k = 0; k < 100; ++k) {
    const ScalarField u = random_field(g, 33, k, true);
    const HorizontalField f = random_horizontal(g, 33, k);
    const double lhs = pairing_grad(horizontal_gradient(u), f);
    const ScalarField div = horizontal_divergence(f);
    const double rhs = (u.values * div.values).sum() * g.cell_weight();
    CHECK(std::abs(lhs + rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
  }
}

TEST_CASE("divergence: zero field and the gradient of coordinate-t") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 9, 9, 9);
  const ScalarField dz = horizontal_divergence(HorizontalField(g));
  CHECK(dz.values.abs().maxCoeff() == 0.0);

  HorizontalField f(g);
  for (int it = 0; it < g.nt - 1; ++it)
    for (int iy = 0; iy < g.ny - 1; ++iy)
      for (int ix = 0; ix < g.nx - 1; ++ix) {
        const Eigen::Index i = g.index(ix, iy, it);
        const Point p = g.node(ix, iy, it);
        f.xcomp[i] = 2.0 * p.y;
        f.ycomp[i] = -2.0 * p.x;
      }
  const ScalarField div = horizontal_divergence(f);
  const Mask interior = interior_mask(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (interior.values[i]) CHECK(std::abs(div.values[i]) <= 1e-12);
  }
}

TEST_CASE("energy: constants, linear data, quadrature scale") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 9, 9, 9);
  const double m = (g.nx - 1.0) * (g.ny - 1.0) * (g.nt - 1.0);
  ScalarField c(g);
  c.values.setConstant(3.0);
  const EnergyParams pe(1.5, 0.7);
  CHECK(energy(c, pe) ==
        doctest::Approx(std::pow(0.7, 0.75) * m * g.cell_weight()).epsilon(1e-13));

  CHECK(energy(sample(AnalyticFunction::coordinate_x(), g), EnergyParams(2.0, 0.0)) ==
        doctest::Approx(m * g.cell_weight()).epsilon(1e-12));

  // integral of 4(x^2+y^2) over the cube is 64/3
  const Grid g33 = Grid::build({-1, -1, -1}, {1, 1, 1}, 33, 33, 33);
  CHECK(energy(sample(AnalyticFunction::coordinate_t(), g33), EnergyParams(2.0, 0.0)) ==
        doctest::Approx(64.0 / 3.0).epsilon(0.02));

  // masked region: restricting to a ball can only reduce the sum
  const Mask ball = fk_ball_mask(g33, {0, 0, 0}, 0.5);
  const ScalarField t33 = sample(AnalyticFunction::coordinate_t(), g33);
  CHECK(energy(t33, EnergyParams(2.0, 0.0), ball) < energy(t33, EnergyParams(2.0, 0.0)));

  CHECK_THROWS_AS(energy(c, EnergyParams(0.5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(energy(c, EnergyParams(2.0, -1.0)), std::invalid_argument);
}

TEST_CASE("singular pair keeps the energy finite at flat nodes") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 5, 5, 5);
  ScalarField c(g);
  c.values.setConstant(1.0);
  CHECK(energy(c, EnergyParams(1.5, 0.0)) == 0.0);
  const ScalarField grad = energy_gradient(c, EnergyParams(1.5, 0.0));
  CHECK(grad.values.isFinite().all());
  CHECK(grad.values.abs().maxCoeff() == 0.0);
}

TEST_CASE("energy gradient matches finite differences of the energy") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 11, 11, 11);
  const ScalarField u = random_field(g, 44, 0, false);
  for (double pexp : {1.5, 2.0, 3.0}) {
    for (double eps : {0.0, 0.1, 1.0}) {
      const EnergyParams params(pexp, eps);
      const ScalarField grad = energy_gradient(u, params);
      for (int k = 0; k < 20; ++k) {
        Rng rng = Rng::at(44, 200, k);
        const int ix = rng.uniform_int(1, g.nx - 2);
        const int iy = rng.uniform_int(1, g.ny - 2);
        const int it = rng.uniform_int(1, g.nt - 2);
        const Eigen::Index i = g.index(ix, iy, it);
        const double delta = 1e-3 * (1.0 + std::abs(u.values[i]));
        ScalarField probe = u;
        const auto eval = [&](double shift) {
          probe.values[i] = u.values[i] + shift;
          return energy(probe, params) / params.p;
        };
        // fourth-order central difference
        const double fd = (-eval(2 * delta) + 8 * eval(delta) - 8 * eval(-delta) +
                           eval(-2 * delta)) /
                          (12 * delta);
        probe.values[i] = u.values[i];
        CHECK(std::abs(fd - grad.values[i]) <= 1e-6 * (std::abs(grad.values[i]) + 1e-12));
      }
      // boundary entries stay zero
      CHECK(grad.values[g.index(0, 3, 3)] == 0.0);
    }
  }
}

TEST_CASE("quadratic case: gradient is linear and matches the explicit stencil") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 9, 9, 9);
  const EnergyParams params(2.0, 0.3);
  const ScalarField u1 = random_field(g, 55, 1, false);
  const ScalarField u2 = random_field(g, 55, 2, false);
  ScalarField mix(g);
  mix.values = 0.25 * u1.values - 1.5 * u2.values;
  const Eigen::ArrayXd lin = 0.25 * energy_gradient(u1, params).values -
                             1.5 * energy_gradient(u2, params).values;
  const Eigen::ArrayXd direct = energy_gradient(mix, params).values;
  CHECK((lin - direct).abs().maxCoeff() <= 1e-12 * (1.0 + direct.abs().maxCoeff()));

  // explicit backward-difference stencil written out independently
  const auto fx = [&](const ScalarField& u, int ix, int iy, int it) {
    const Eigen::Index i = g.index(ix, iy, it);
    const Point p = g.node(ix, iy, it);
    return (u.values[g.index(ix + 1, iy, it)] - u.values[i]) / g.hx +
           2.0 * p.y * (u.values[g.index(ix, iy, it + 1)] - u.values[i]) / g.ht;
  };
  const auto fy = [&](const ScalarField& u, int ix, int iy, int it) {
    const Eigen::Index i = g.index(ix, iy, it);
    const Point p = g.node(ix, iy, it);
    return (u.values[g.index(ix, iy + 1, it)] - u.values[i]) / g.hy -
           2.0 * p.x * (u.values[g.index(ix, iy, it + 1)] - u.values[i]) / g.ht;
  };
  const ScalarField grad = energy_gradient(u1, params);
  for (int k = 0; k < 50; ++k) {
    Rng rng = Rng::at(55, 201, k);
    const int ix = rng.uniform_int(1, g.nx - 2);
    const int iy = rng.uniform_int(1, g.ny - 2);
    const int it = rng.uniform_int(1, g.nt - 2);
    const Point p = g.node(ix, iy, it);
    const double div = (fx(u1, ix, iy, it) - fx(u1, ix - 1, iy, it)) / g.hx +
                       (fy(u1, ix, iy, it) - fy(u1, ix, iy - 1, it)) / g.hy +
                       2.0 * p.y * (fx(u1, ix, iy, it) - fx(u1, ix, iy, it - 1)) / g.ht -
                       2.0 * p.x * (fy(u1, ix, iy, it) - fy(u1, ix, iy, it - 1)) / g.ht;
    const double expected = -g.cell_weight() * div;
    CHECK(grad.values[g.index(ix, iy, it)] == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("flux: zero gradients, exponent shortcuts") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 5, 5, 5);
  ScalarField c(g);
  c.values.setConstant(2.0);
  const HorizontalField f0 = flux(c, EnergyParams(3.0, 0.5));
  CHECK(f0.xcomp.abs().maxCoeff() == 0.0);

  // p = 2: flux equals the gradient for every eps
  const ScalarField u = random_field(g, 66, 0, false);
  const HorizontalField grad = horizontal_gradient(u);
  const HorizontalField f2 = flux(u, EnergyParams(2.0, 7.0));
  CHECK((f2.xcomp - grad.xcomp).abs().maxCoeff() == 0.0);
  CHECK((f2.ycomp - grad.ycomp).abs().maxCoeff() == 0.0);

  // p = 4, eps = 0, grad = (1, 1): flux = (2, 2); u = x + y has that gradient
  ScalarField xy(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Point p = g.node(i);
    xy.values[i] = p.x + p.y;
  }
  const HorizontalField f4 = flux(xy, EnergyParams(4.0, 0.0));
  const Mask interior = interior_mask(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!interior.values[i]) continue;
    CHECK(f4.xcomp[i] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f4.ycomp[i] == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("operator A: exact on quadratic presets at p = 2, first order otherwise") {
  // p = 2: the composed forward/adjoint stencil reproduces quadratics exactly
  for (int n : {9, 17}) {
    const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, n, n, n);
    const ScalarField hp = sample(AnalyticFunction::horizontal_paraboloid(0, 1), g);
    const ScalarField a = operator_A(hp, EnergyParams(2.0, 0.0));
    const Mask measured = measured_interior_mask(g);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (measured.values[i]) CHECK(a.values[i] == doctest::Approx(4.0).epsilon(1e-11));
    }

    const ScalarField t = sample(AnalyticFunction::coordinate_t(), g);
    const ScalarField at = operator_A(t, EnergyParams(2.0, 0.0));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (measured.values[i]) CHECK(std::abs(at.values[i]) <= 1e-10);
    }

    ScalarField c(g);
    c.values.setConstant(9.0);
    CHECK(operator_A(c, EnergyParams(2.0, 0.5)).values.abs().maxCoeff() == 0.0);
  }

  // nonquadratic flux (p = 3): genuine first-order consistency, measured on
  // a fixed sub-box so the max-error domain does not move with h
  const AnalyticFunction fp = AnalyticFunction::full_paraboloid(0, 1);
  const EnergyParams params(3.0, 0.1);
  std::vector<double> spacings, errors;
  for (int n : {17, 33, 65}) {
    const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, n, n, n);
    const ScalarField u = sample(fp, g);
    const ScalarField a = operator_A(u, params);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const Point p = g.node(i);
      if (std::abs(p.x) > 0.5 || std::abs(p.y) > 0.5 || std::abs(p.t) > 0.5) continue;
      worst = std::max(worst, std::abs(a.values[i] - fp.operator_value(p, 3.0, 0.1)));
    }
    spacings.push_back(g.hx);
    errors.push_back(worst);
  }
  CHECK(errors[2] < errors[0]);
  CHECK(oracles::loglog_slope(spacings, errors) >= 0.9);
}

TEST_CASE("energy is convex along segments") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 7, 7, 7);
  for (double pexp : {1.5, 3.0}) {
    const EnergyParams params(pexp, 0.1);
    for (int k = 0; k < 100; ++k) {
      const ScalarField u = random_field(g, 77, 2 * k, false);
      const ScalarField v = random_field(g, 77, 2 * k + 1, false);
      const double eu = energy(u, params);
      const double ev = energy(v, params);
      for (double theta : {0.25, 0.5, 0.75}) {
        ScalarField mix(g);
        mix.values = theta * u.values + (1.0 - theta) * v.values;
        CHECK(energy(mix, params) <= theta * eu + (1.0 - theta) * ev + 1e-10);
      }
    }
  }
}

TEST_CASE("truncation: stated branch values") {
  const double eta = 0.3;
  CHECK(truncation_H(-1.0, eta) == 0.0);
  CHECK(truncation_H(eta / 2.0, eta) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(truncation_H(2.0 * eta, eta) == 1.0);
  CHECK_THROWS_AS(truncation_H(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("penalty integrand: closed form vs quadrature oracle") {
  // stated case: h = 1, psi = 0, eta = 0.5, r = 1 gives slope 1
  const PenaltyPoint stated = penalty_value_and_slope(1.0, 0.0, 1.0, 0.5);
  CHECK(stated.slope == 1.0);
  const double quad = oracles::integrate(
      [&](double s) { return 1.0 - truncation_H(0.0 - s, 0.5); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(stated.value - quad) <= 1e-10);

  // integrand vanishes left of psi - eta when that point is >= 0
  const PenaltyPoint flat = penalty_value_and_slope(0.4, 1.0, 2.0, 0.5);
  CHECK(flat.value == 0.0);
  CHECK(flat.slope == 0.0);

  const PenaltyPoint zero_h = penalty_value_and_slope(2.0, -1.0, 0.0, 0.25);
  CHECK(zero_h.value == 0.0);
  CHECK(zero_h.slope == 0.0);

  for (int k = 0; k < 200; ++k) {
    Rng rng = Rng::at(88, 300, k);
    const double psi = rng.uniform(-2, 2);
    const double eta = rng.uniform(0.05, 0.95);
    const double h = rng.uniform(0, 5);
    const double r = rng.uniform(-3, 3);
    const PenaltyPoint got = penalty_value_and_slope(r, psi, h, eta);
    const double want = oracles::integrate(
        [&](double s) { return h * (1.0 - truncation_H(psi - s, eta)); }, 0.0, r, 1e-12);
    CHECK(std::abs(got.value - want) <= 1e-9 * (1.0 + std::abs(want)));
    CHECK(penalty_value_and_slope(0.0, psi, h, eta).value == 0.0);
  }
}

TEST_CASE("penalty slope bounds and convexity") {
  double worst_low = 0.0;
  double worst_high = 0.0;
  for (int k = 0; k < 100000; ++k) {
    Rng rng = Rng::at(88, 301, k);
    const double psi = rng.uniform(-3, 3);
    const double eta = rng.uniform(1e-4, 0.999);
    const double h = rng.log_uniform(1e-6, 1e3);
    const double r1 = rng.uniform(-4, 4);
    const double r2 = r1 + rng.uniform(0, 2);
    const double s1 = penalty_value_and_slope(r1, psi, h, eta).slope;
    const double s2 = penalty_value_and_slope(r2, psi, h, eta).slope;
    worst_low = std::min(worst_low, s1);
    worst_high = std::max(worst_high, s1 - h);
    CHECK(s1 <= s2 + 1e-15);  // slope nondecreasing in r: the value is convex
  }
  CHECK(worst_low >= 0.0);
  CHECK(worst_high <= 0.0);
}

TEST_CASE("obstacle operator bound: stated fields") {
  const Grid g = Grid::build({-1, -1, -1}, {1, 1, 1}, 9, 9, 9);
  const EnergyParams params(2.0, 0.5);
  CHECK(obstacle_operator_bound(AnalyticFunction::constant(3.0), g, params)
            .values.abs()
            .maxCoeff() == 0.0);
  CHECK(obstacle_operator_bound(AnalyticFunction::coordinate_t(), g, params)
            .values.abs()
            .maxCoeff() <= 1e-14);

  const ScalarField h = obstacle_operator_bound(AnalyticFunction::valley(1.0, 2.0), g, params);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Point p = g.node(i);
    const double expected = 2.0 * (4.0 + 8.0 * (p.x * p.x + p.y * p.y));
    CHECK(h.values[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}
