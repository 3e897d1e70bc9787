// Minimization of the discrete p-energy over the admissible set (obstacle
// from above, Dirichlet data pinned on the box faces) and of its penalized
// companion. Projected gradient descent with monotone Armijo backtracking;
// a safeguarded Barzilai-Borwein step is the default step policy.
//
// Tolerances are expressed in operator units: a solve is converged when the
// max norm of the projected energy gradient divided by the cell weight
// (i.e. the residual of A(u)) drops below `tol`.
#pragma once

#include <cstdint>
#include <vector>

#include "hobs/operator.hpp"

namespace hobs {

enum class StepPolicy {
  BarzilaiBorwein,  // spectral initial step, Armijo safeguarded
  GrowthBacktrack,  // previous accepted step times two as the trial step
};

struct SolveOptions {
  double tol = 1e-8;        // projected-gradient residual, operator units
  int max_iters = 200000;
  StepPolicy policy = StepPolicy::BarzilaiBorwein;
  double armijo_shrink = 0.5;
  double armijo_slope = 1e-4;
};

struct ObstacleProblem {
  Grid grid;
  AnalyticFunction psi_fn;
  AnalyticFunction u_star_fn;
  ScalarField psi;
  ScalarField u_star;
  EnergyParams params;
  SolveOptions options;

  // Samples both presets and enforces the datum feasibility u_star <= psi
  // at every boundary node (otherwise the discrete admissible set is empty).
  static ObstacleProblem make(const Grid& grid, const AnalyticFunction& psi_fn,
                              const AnalyticFunction& u_star_fn, const EnergyParams& params,
                              const SolveOptions& options = {});
};

struct HistoryRow {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;  // projected-gradient residual, operator units
  double step = 0.0;
};

struct SolverResult {
  ScalarField u;
  ScalarField multiplier;  // -energy_gradient at the final iterate
  std::vector<HistoryRow> history;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  Mask active;  // nodes with psi - u <= tau_active (reporting only)
};

// Projected gradient descent on E = (1/p) energy; every iterate is clipped
// nodewise to u <= psi and boundary nodes stay pinned to u_star. On budget
// exhaustion the best iterate is returned with converged = false.
SolverResult solve_obstacle(const ObstacleProblem& prob);

// Unconstrained descent on E_eta(u) = (1/p) energy(u) + sum F_eta(u) w with
// the penalty built from h = (A_eps psi)^+. The boundary datum is taken
// from `datum` (the obstacle solution per the penalized formulation);
// u <= psi is verified downstream, never enforced here.
SolverResult solve_penalized(const ObstacleProblem& prob, double eta, const ScalarField& datum);

struct ViResidualReport {
  int trials = 0;
  int skipped = 0;
  double min_directional = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Checks the discrete variational inequality on random feasible directions:
// <energy_gradient(u), v - u> / ||v - u||_w must not drop below -10 tol.
ViResidualReport vi_residual_check(const SolverResult& result, const ObstacleProblem& prob,
                                   int trials, std::uint64_t seed);

}  // namespace hobs
