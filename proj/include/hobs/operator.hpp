// Discrete horizontal calculus on the lattice: forward-difference horizontal
// gradient, its exact negative adjoint as the divergence, the regularized
// p-energy with gradient and flux, and the penalty machinery (truncation
// H_eta, integrand F_eta, obstacle operator bound h).
//
// The divergence is built so that the summation-by-parts identity
//   sum (grad_H u . F) w  =  - sum u (div_H F) w
// holds exactly (to roundoff) whenever u vanishes on the box faces. The
// energy gradient and the operator A are tied together through it:
//   A(u) = div_H(flux(u)) = -energy_gradient(u) / w   on interior nodes.
#pragma once

#include "hobs/grid.hpp"

namespace hobs {

struct EnergyParams {
  double p = 2.0;   // exponent in (1, inf)
  double eps = 0.0; // regularization >= 0

  EnergyParams() = default;
  EnergyParams(double p_, double eps_) : p(p_), eps(eps_) { validate(); }

  void validate() const;
  bool singular_pair() const { return eps == 0.0 && p < 2.0; }
  double gradient_eps() const { return singular_pair() ? kEpsFloor : eps; }
};

// At each support node, with forward differences D+ along the named axes
// and (x, y) the node's own coordinates:
//   X-comp = D+x u + 2y D+t u,   Y-comp = D+y u - 2x D+t u.
HorizontalField horizontal_gradient(const ScalarField& u);

// Exact negative adjoint of horizontal_gradient in the w-weighted inner
// product; on interior nodes it is the backward-difference divergence
// X(Fx) + Y(Fy).
ScalarField horizontal_divergence(const HorizontalField& field);

// Sum over support nodes (optionally restricted by a mask) of
// (eps + |grad_H u|^2)^(p/2) * w.
double energy(const ScalarField& u, const EnergyParams& params);
double energy(const ScalarField& u, const EnergyParams& params, const Mask& region);

// Partial derivatives of E(u) := (1/p) * energy(u) with respect to interior
// node values; boundary entries are zero.
ScalarField energy_gradient(const ScalarField& u, const EnergyParams& params);

// (eps + |grad_H u|^2)^(p/2-1) grad_H u, nodewise on the support set.
HorizontalField flux(const ScalarField& u, const EnergyParams& params);

// div_H(flux(u)); equals -energy_gradient(u)/w on interior nodes by
// construction. Values in the outermost interior layer use one-sided data;
// verification statistics restrict to measured_interior_mask.
ScalarField operator_A(const ScalarField& u, const EnergyParams& params);

// Interior nodes at distance >= 2 lattice steps from the box faces, where
// the composed gradient/divergence stencil is consistent.
Mask measured_interior_mask(const Grid& g);

// Piecewise-linear truncation: 0 for t <= 0, t/eta on (0, eta), 1 above.
double truncation_H(double t, double eta);

struct PenaltyPoint {
  double value = 0.0;
  double slope = 0.0;
};

// F_eta(r, xi) = integral_0^r h(xi) (1 - H_eta(psi(xi) - sigma)) dsigma and
// its r-derivative, in closed form. The integrand vanishes for
// sigma <= psi - eta, ramps linearly on (psi - eta, psi), and is 1 beyond;
// the value is the exact piecewise-quadratic antiderivative anchored at
// r = 0. Convex and nondecreasing in r, with 0 <= slope <= h.
PenaltyPoint penalty_value_and_slope(double r, double psi_value, double h_value, double eta);

struct PenaltyParams {
  double eta = 0.1;  // in (0, 1)
  ScalarField h;     // nonnegative obstacle operator bound
  ScalarField psi;

  void validate() const;
};

// Nodewise positive part of the exact continuum operator value of the
// obstacle preset (not the discrete operator): h = (A_eps psi)^+.
ScalarField obstacle_operator_bound(const AnalyticFunction& psi, const Grid& g,
                                    const EnergyParams& params);

}  // namespace hobs
