#include "hobs/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hobs/rng.hpp"

namespace hobs {

namespace {

struct EngineState {
  Eigen::ArrayXd u;
  std::vector<HistoryRow> history;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

Eigen::Array<bool, Eigen::Dynamic, 1> boundary_flags(const Grid& g) {
  Eigen::Array<bool, Eigen::Dynamic, 1> flags(g.size());
  for (int it = 0; it < g.nt; ++it)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        flags[g.index(ix, iy, it)] = g.is_boundary(ix, iy, it);
  return flags;
}

// Residual of the first-order conditions in operator units: plain gradient
// at free nodes; at clipped nodes only the part pointing away from the
// obstacle counts, the rest is the multiplier.
double projected_residual(const Eigen::ArrayXd& u, const Eigen::ArrayXd& grad,
                          const Eigen::ArrayXd* obstacle, double w) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double gi = grad[i];
    if (obstacle && u[i] >= (*obstacle)[i] && gi < 0.0) gi = 0.0;
    worst = std::max(worst, std::abs(gi));
  }
  return worst / w;
}

// Monotone descent with Armijo backtracking along the projection arc.
// EnergyFn: double(const ArrayXd&); GradFn: ArrayXd(const ArrayXd&) with
// zero entries on the boundary.
template <class EnergyFn, class GradFn>
EngineState descend(const Grid& g, Eigen::ArrayXd u0, const Eigen::ArrayXd* obstacle,
                    EnergyFn&& energy_fn, GradFn&& grad_fn, const SolveOptions& opt) {
  const double w = g.cell_weight();
  EngineState st;
  st.u = std::move(u0);
  if (obstacle) st.u = st.u.min(*obstacle);

  double e_cur = energy_fn(st.u);
  Eigen::ArrayXd grad = grad_fn(st.u);
  double res = projected_residual(st.u, grad, obstacle, w);
  st.history.push_back({0, e_cur, res, 0.0});

  Eigen::ArrayXd prev_u, prev_grad;
  double step_seed = 1.0;
  bool have_prev = false;

  int iter = 0;
  while (iter < opt.max_iters) {
    if (res <= opt.tol) {
      st.converged = true;
      break;
    }
    ++iter;

    double step = step_seed;
    if (opt.policy == StepPolicy::BarzilaiBorwein && have_prev) {
      const Eigen::ArrayXd s = st.u - prev_u;
      const Eigen::ArrayXd y = grad - prev_grad;
      const double sy = (s * y).sum();
      if (sy > 1e-300) {
        step = (s * s).sum() / sy;
      }
    }
    step = std::clamp(step, 1e-14, 1e14);

    // Backtracking on the projection arc. Near the minimum the attainable
    // decrease per step drops below the roundoff level of the energy sum,
    // so the sufficient-decrease test carries an absolute noise allowance;
    // this keeps the spectral step usable all the way down to the gradient
    // tolerance instead of stalling at ~sqrt(machine eps).
    const double noise = 1e-13 * (1.0 + std::abs(e_cur));
    Eigen::ArrayXd trial;
    double e_trial = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      trial = st.u - step * grad;
      if (obstacle) trial = trial.min(*obstacle);
      const double decrease = (grad * (trial - st.u)).sum();
      e_trial = energy_fn(trial);
      if (e_trial <= e_cur + opt.armijo_slope * decrease + noise) {
        accepted = true;
        break;
      }
      step *= opt.armijo_shrink;
    }
    if (!accepted) break;  // stalled at roundoff; residual decides convergence

    prev_u.swap(st.u);
    prev_grad.swap(grad);
    st.u = std::move(trial);
    e_cur = e_trial;
    grad = grad_fn(st.u);
    have_prev = true;
    step_seed = 2.0 * step;

    res = projected_residual(st.u, grad, obstacle, w);
    st.history.push_back({iter, e_cur, res, step});
    if (res <= opt.tol) {
      st.converged = true;
      break;
    }
  }
  st.iterations = iter;
  st.residual = res;
  return st;
}

Eigen::ArrayXd pinned_energy_gradient(const ScalarField& field, const EnergyParams& params) {
  return energy_gradient(field, params).values;
}

// Initial iterate: extend the boundary datum by the p = 2, eps = 1 quadratic
// problem, then clip under the obstacle. Feasible and close for cheap.
Eigen::ArrayXd initial_iterate(const ObstacleProblem& prob) {
  const EnergyParams quad(2.0, 1.0);
  SolveOptions init_opt = prob.options;
  init_opt.tol = std::max(prob.options.tol * 100.0, 1e-6);
  ScalarField work(prob.grid);
  EngineState ext = descend(
      prob.grid, prob.u_star.values, nullptr,
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        return energy(work, quad) / 2.0;
      },
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        return pinned_energy_gradient(work, quad);
      },
      init_opt);
  return ext.u.min(prob.psi.values);
}

Mask active_mask(const Grid& g, const Eigen::ArrayXd& u, const Eigen::ArrayXd& psi) {
  const double tau = 1e-8 * (1.0 + psi.abs().maxCoeff());
  Mask mask(g);
  const auto boundary = boundary_flags(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    mask.values[i] = !boundary[i] && (psi[i] - u[i] <= tau);
  }
  return mask;
}

SolverResult finalize(const ObstacleProblem& prob, EngineState&& st,
                      const Eigen::ArrayXd& final_grad) {
  SolverResult out;
  out.u = ScalarField(prob.grid, std::move(st.u));
  out.multiplier = ScalarField(prob.grid, -final_grad);
  out.history = std::move(st.history);
  out.iterations = st.iterations;
  out.converged = st.converged;
  out.residual = st.residual;
  out.active = active_mask(prob.grid, out.u.values, prob.psi.values);
  return out;
}

}  // namespace

ObstacleProblem ObstacleProblem::make(const Grid& grid, const AnalyticFunction& psi_fn,
                                      const AnalyticFunction& u_star_fn,
                                      const EnergyParams& params, const SolveOptions& options) {
  params.validate();
  ObstacleProblem prob{grid, psi_fn, u_star_fn, sample(psi_fn, grid), sample(u_star_fn, grid),
                       params, options};
  if (!prob.psi.values.isFinite().all() || !prob.u_star.values.isFinite().all()) {
    throw std::invalid_argument("ObstacleProblem: psi and u_star must be finite on the grid");
  }
  for (int it = 0; it < grid.nt; ++it)
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        if (!grid.is_boundary(ix, iy, it)) continue;
        const Eigen::Index i = grid.index(ix, iy, it);
        if (prob.u_star.values[i] > prob.psi.values[i]) {
          std::ostringstream msg;
          msg << "ObstacleProblem: infeasible datum, u_star > psi at boundary node (" << ix
              << "," << iy << "," << it << ")";
          throw std::invalid_argument(msg.str());
        }
      }
  return prob;
}

SolverResult solve_obstacle(const ObstacleProblem& prob) {
  const double inv_p = 1.0 / prob.params.p;
  ScalarField work(prob.grid);
  EngineState st = descend(
      prob.grid, initial_iterate(prob), &prob.psi.values,
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        return inv_p * energy(work, prob.params);
      },
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        return pinned_energy_gradient(work, prob.params);
      },
      prob.options);
  work.values = st.u;
  return finalize(prob, std::move(st), pinned_energy_gradient(work, prob.params));
}

SolverResult solve_penalized(const ObstacleProblem& prob, double eta, const ScalarField& datum) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("solve_penalized: eta must lie in (0, 1)");
  }
  if (!(datum.grid == prob.grid)) {
    throw std::invalid_argument("solve_penalized: datum grid mismatch");
  }
  PenaltyParams penalty{eta, obstacle_operator_bound(prob.psi_fn, prob.grid, prob.params),
                        prob.psi};
  penalty.validate();

  const Grid& g = prob.grid;
  const double w = g.cell_weight();
  const double inv_p = 1.0 / prob.params.p;
  const auto boundary = boundary_flags(g);
  ScalarField work(g);

  const auto penalty_energy = [&](const Eigen::ArrayXd& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      acc += penalty_value_and_slope(v[i], penalty.psi.values[i], penalty.h.values[i], eta).value;
    }
    return acc * w;
  };

  EngineState st = descend(
      g, datum.values, nullptr,
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        return inv_p * energy(work, prob.params) + penalty_energy(v);
      },
      [&](const Eigen::ArrayXd& v) {
        work.values = v;
        Eigen::ArrayXd grad = pinned_energy_gradient(work, prob.params);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
          if (boundary[i]) continue;
          grad[i] +=
              w * penalty_value_and_slope(v[i], penalty.psi.values[i], penalty.h.values[i], eta)
                      .slope;
        }
        return grad;
      },
      prob.options);
  work.values = st.u;
  return finalize(prob, std::move(st), pinned_energy_gradient(work, prob.params));
}

ViResidualReport vi_residual_check(const SolverResult& result, const ObstacleProblem& prob,
                                   int trials, std::uint64_t seed) {
  const Grid& g = prob.grid;
  const double w = g.cell_weight();
  const auto boundary = boundary_flags(g);
  const Eigen::ArrayXd grad = -result.multiplier.values;

  ViResidualReport report;
  report.trials = trials;
  report.tol = prob.options.tol;
  report.min_directional = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    Rng rng = Rng::at(seed, 0x7669u /* "vi" */, static_cast<std::uint64_t>(k));
    double ip = 0.0;
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (boundary[i]) continue;  // v - u vanishes on the boundary
      const double vi = std::min(result.u.values[i] + rng.uniform(-1.0, 1.0),
                                 prob.psi.values[i]);
      const double di = vi - result.u.values[i];
      ip += grad[i] * di;
      norm2 += di * di * w;
    }
    if (norm2 <= 1e-300) {
      ++report.skipped;  // degenerate direction v = u
      continue;
    }
    report.min_directional = std::min(report.min_directional, ip / std::sqrt(norm2));
  }
  report.pass = report.min_directional >= -10.0 * report.tol;
  return report;
}

}  // namespace hobs
