#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hobs/verify.hpp"

using namespace hobs;

namespace {

Grid unit_box(int n) { return Grid::build({-1, -1, -1}, {1, 1, 1}, n, n, n); }

ObstacleProblem valley_problem(int n, double p, double eps, double tol = 1e-8) {
  SolveOptions opt;
  opt.tol = tol;
  return ObstacleProblem::make(unit_box(n), AnalyticFunction::valley(0.5, 2.0),
                               AnalyticFunction::constant(0.0), EnergyParams(p, eps), opt);
}

}  // namespace

TEST_CASE("operator bound check: unconstrained case and valley contact") {
  // Far obstacle: the operator on the solution is zero and the bound holds.
  const ObstacleProblem far = ObstacleProblem::make(
      unit_box(11), AnalyticFunction::constant(1e6), AnalyticFunction::constant(0.0),
      EnergyParams(2.0, 0.5));
  const SolverResult res_far = solve_obstacle(far);
  REQUIRE(res_far.converged);
  const LSReport rep_far = ls_check(res_far, far, 1e-5);
  CHECK(rep_far.pass());
  CHECK(std::abs(rep_far.min_operator) <= 1e-6);
  CHECK(rep_far.active_fraction == 0.0);

  // Valley obstacle: the lower bound holds to solver accuracy and the
  // contact set is real. The pointwise upper check against the exact bound
  // reports the structural excess this stencil produces where the solution
  // kinks off the obstacle: the cross-difference stencil is inconsistent
  // across the C^{1,1} free boundary, and the checker must say so rather
  // than hide it.
  const ObstacleProblem prob = valley_problem(17, 2.0, 0.5);
  const SolverResult res = solve_obstacle(prob);
  REQUIRE(res.converged);
  const LSReport rep = ls_check(res, prob, 1e-5);
  CHECK(rep.lower_violations == 0);
  CHECK(rep.min_operator >= -1e-5);
  CHECK(rep.active_fraction >= 0.01);
  CHECK(rep.measured_nodes > 0);
  CHECK(rep.upper_violations > 0);  // free-boundary ring nodes
  CHECK(rep.max_excess > 1e-5);
  CHECK(rep.max_excess < 1.0);
  // the same excess shows up against the discrete bound: it is not an
  // artifact of comparing a discrete operator with a continuum bound
  CHECK(rep.max_excess_discrete == doctest::Approx(rep.max_excess).epsilon(1e-10));
}

TEST_CASE("operator bound check rejects unconverged results") {
  ObstacleProblem prob = valley_problem(9, 2.0, 0.5);
  prob.options.max_iters = 2;
  const SolverResult res = solve_obstacle(prob);
  REQUIRE(!res.converged);
  CHECK_THROWS_AS(ls_check(res, prob, 1e-5), std::invalid_argument);
}

TEST_CASE("negative control: a dented solution must fail the lower bound") {
  const ObstacleProblem prob = valley_problem(17, 2.0, 0.5);
  const SolverResult res = solve_obstacle(prob);
  REQUIRE(res.converged);
  const LSReport control = ls_negative_control(res, prob, 0.1, 1e-5);
  CHECK(!control.pass());
  CHECK(control.lower_violations > 0);
  CHECK(control.min_operator < -1e-5);

  // the genuine solution keeps a clean lower bound: the checker
  // discriminates the dent from honest solver output
  const LSReport genuine = ls_check(res, prob, 1e-5);
  CHECK(genuine.lower_violations == 0);
  CHECK(control.min_operator < genuine.min_operator - 1.0);
}

TEST_CASE("sandwich check: penalized vs constrained solutions") {
  const ObstacleProblem prob = valley_problem(13, 2.0, 0.5);
  const SolverResult obstacle = solve_obstacle(prob);
  REQUIRE(obstacle.converged);

  const SolverResult pen = solve_penalized(prob, 0.1, obstacle.u);
  REQUIRE(pen.converged);
  const SandwichReport rep = sandwich_check(obstacle, pen, prob.psi, 0.1, 1e-4);
  CHECK(rep.pass);
  CHECK(rep.max_pen_minus_psi <= 1e-4);
  CHECK(rep.max_pen_minus_obs <= 1e-4);
  CHECK(rep.max_obs_minus_pen_minus_eta <= 1e-4);
  CHECK(rep.sup_diff <= 0.1 + 1e-4);

  // grids must match
  const Grid other = unit_box(11);
  ScalarField wrong(other);
  CHECK_THROWS_AS(sandwich_check(obstacle, pen, wrong, 0.1, 1e-4), std::invalid_argument);
}

TEST_CASE("eps sweep: p = 2 minimizers are eps-invariant") {
  const ObstacleProblem prob = valley_problem(13, 2.0, 0.0);
  const RateReport rep = eps_sweep(prob, {1e-1, 1e-2, 1e-3, 1e-4}, 0.5);
  CHECK(rep.pass);
  for (double v : rep.values) CHECK(v <= 10.0 * prob.options.tol);
  CHECK(rep.theoretical_exponent == 1.0);
  CHECK(rep.ball_prefactor >= 1.0);
}

TEST_CASE("eps sweep: degenerate exponent decays at the predicted rate") {
  // p = 3: the proposition promises at least eps^1; the measured decay is
  // much faster, which also passes (the estimate is an upper bound).
  const ObstacleProblem prob = valley_problem(13, 3.0, 0.0);
  const RateReport rep = eps_sweep(prob, {1e-1, 1e-2, 1e-3, 1e-4}, 0.5);
  CHECK(rep.monotone);
  CHECK(rep.theoretical_exponent == 1.0);
  CHECK(rep.points_used == 4);
  CHECK(rep.fitted_slope >= 0.9);
  CHECK(rep.pass);
  for (double c : rep.implied_constants) CHECK(c >= 0.0);

  // p = 1.5: singular regime with the eps floor in the reference solve
  const ObstacleProblem prob_low = valley_problem(13, 1.5, 0.0);
  const RateReport rep_low = eps_sweep(prob_low, {1e-1, 1e-2, 1e-3, 1e-4}, 0.5);
  CHECK(rep_low.theoretical_exponent == doctest::Approx(0.5625));
  CHECK(rep_low.fitted_slope >= 0.9 * 0.5625);
  CHECK(rep_low.pass);
}

TEST_CASE("eps sweep input validation") {
  const ObstacleProblem prob = valley_problem(9, 2.0, 0.0);
  CHECK_THROWS_AS(eps_sweep(prob, {1e-2, 1e-1, 1e-3, 1e-4}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(eps_sweep(prob, {1e-1, 1e-2}, 0.5), std::invalid_argument);
  // ball sticking out of the measured interior
  CHECK_THROWS_AS(eps_sweep(prob, {1e-1, 1e-2, 1e-3, 1e-4}, 50.0), std::invalid_argument);
}

TEST_CASE("lemma suite: all inequalities hold with pinned constants") {
  const auto reports = lemma_suite(42, 20000);
  REQUIRE(reports.size() == 8);
  for (const auto& rep : reports) {
    CAPTURE(rep.lemma);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.worst_margin));
    CHECK(rep.worst_margin <= 1.0 + 1e-9);
    CHECK(rep.trials == 20000);
    CHECK(rep.constant > 0.0);
  }
  // named rows in order
  CHECK(reports[0].lemma == "Fu1");
  CHECK(reports[1].lemma == "Fu2");
  CHECK(reports[2].lemma == "FuC");
  CHECK(reports[3].lemma == "sim-h");
  CHECK(reports[4].lemma == "from-10-to-11");
  CHECK(reports[5].lemma == "AT679");
  CHECK(reports[6].lemma == "19pL");
  CHECK(reports[7].lemma == "7bis0");
}

TEST_CASE("lemma suite: seeded determinism and worst-margin stability") {
  const auto a = lemma_suite(7, 10000);
  const auto b = lemma_suite(7, 10000);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].worst_margin == b[i].worst_margin);
    CHECK(a[i].constant == b[i].constant);
  }

  // doubling the trials keeps the worst margin within a factor of two
  const auto twice = lemma_suite(7, 20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(a[i].lemma);
    CHECK(twice[i].worst_margin >= a[i].worst_margin);  // superset of trials
    CHECK(twice[i].worst_margin <= 2.0 * a[i].worst_margin);
  }

  // a different seed still passes
  for (const auto& rep : lemma_suite(987654321, 10000)) CHECK(rep.pass);
}

// The stated equality/degenerate cases of the appendix inequalities,
// checked directly on the formulas.
TEST_CASE("lemma edge cases hold with equality") {
  // Fu1 with A = B: both sides vanish
  const double lhs_fu1 = 0.0;
  CHECK(lhs_fu1 <= 0.0);

  // AT679 with a = b and kappa = 1, Psi = x^q: LHS = 1/(2 Psi(eps+|a|^2))
  const double eps = 0.3;
  const double a2 = 1.7;
  const double q = 0.8;
  const double lhs = 0.5 * std::pow(eps + a2, -q);
  const double rhs = 0.5 * std::pow(eps + 2.0 * a2, -q);
  CHECK(lhs >= rhs);

  // FuC with a = 0: left side vanishes, right side is positive
  const double p = 3.0;
  const double lhs_fuc = (std::pow(eps, p / 2.0 - 1.0) - 0.0) * 0.0;
  CHECK(lhs_fuc == 0.0);
}
