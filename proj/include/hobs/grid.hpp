// Uniform node-centered lattice over an axis-aligned box, plus the field
// containers used throughout: per-node scalars, two-component horizontal
// vectors on the forward-difference support set, and boolean masks.
//
// All integrals are plain Riemann sums with the constant cell weight
// w = hx*hy*ht; reductions run in a fixed node order so results are
// reproducible bit for bit.
#pragma once

#include <Eigen/Core>

#include <array>
#include <string>

#include "hobs/heisenberg.hpp"

namespace hobs {

struct Grid {
  Point lo{};
  Point hi{};
  int nx = 0, ny = 0, nt = 0;
  double hx = 0, hy = 0, ht = 0;

  // Validates box orientation and the >= 3 nodes-per-axis requirement.
  static Grid build(const Point& lo, const Point& hi, int nx, int ny, int nt);

  Eigen::Index size() const { return static_cast<Eigen::Index>(nx) * ny * nt; }
  double cell_weight() const { return hx * hy * ht; }

  // Linear index, row-major in (it, iy, ix): ix varies fastest.
  Eigen::Index index(int ix, int iy, int it) const {
    return (static_cast<Eigen::Index>(it) * ny + iy) * nx + ix;
  }
  std::array<int, 3> unindex(Eigen::Index i) const {
    const int ix = static_cast<int>(i % nx);
    const int iy = static_cast<int>((i / nx) % ny);
    const int it = static_cast<int>(i / (static_cast<Eigen::Index>(nx) * ny));
    return {ix, iy, it};
  }

  Point node(int ix, int iy, int it) const {
    return {lo.x + ix * hx, lo.y + iy * hy, lo.t + it * ht};
  }
  Point node(Eigen::Index i) const {
    const auto [ix, iy, it] = unindex(i);
    return node(ix, iy, it);
  }

  bool is_boundary(int ix, int iy, int it) const {
    return ix == 0 || iy == 0 || it == 0 || ix == nx - 1 || iy == ny - 1 || it == nt - 1;
  }
  // Forward differences along all three axes exist here.
  bool in_support(int ix, int iy, int it) const {
    return ix < nx - 1 && iy < ny - 1 && it < nt - 1;
  }

  bool operator==(const Grid& other) const {
    return nx == other.nx && ny == other.ny && nt == other.nt && lo.x == other.lo.x &&
           lo.y == other.lo.y && lo.t == other.lo.t && hi.x == other.hi.x &&
           hi.y == other.hi.y && hi.t == other.hi.t;
  }
};

struct ScalarField {
  Grid grid;
  Eigen::ArrayXd values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), values(Eigen::ArrayXd::Zero(g.size())) {}
  ScalarField(const Grid& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {}
};

// X and Y components live on the support set; entries outside it are zero.
struct HorizontalField {
  Grid grid;
  Eigen::ArrayXd xcomp;
  Eigen::ArrayXd ycomp;

  HorizontalField() = default;
  explicit HorizontalField(const Grid& g)
      : grid(g),
        xcomp(Eigen::ArrayXd::Zero(g.size())),
        ycomp(Eigen::ArrayXd::Zero(g.size())) {}
};

struct Mask {
  Grid grid;
  Eigen::Array<bool, Eigen::Dynamic, 1> values;

  Mask() = default;
  explicit Mask(const Grid& g)
      : grid(g), values(Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(g.size(), false)) {}

  Eigen::Index count() const { return values.count(); }
};

ScalarField sample(const AnalyticFunction& f, const Grid& g);

// Nodes q with fk_norm(center^{-1} o q) < R (left-translated gauge ball).
Mask fk_ball_mask(const Grid& g, const Point& center, double radius);

Mask interior_mask(const Grid& g);

// Interior nodes at least `depth` lattice steps away from every box face.
Mask deep_interior_mask(const Grid& g, int depth);

// Sum over masked nodes of |f|^p * w, i.e. the p-th power of the L^p norm.
// Callers take roots explicitly when they need the norm itself.
double lp_norm_p(const ScalarField& f, double p, const Mask& mask);

// Same, with |F| the pointwise Euclidean magnitude of the two components;
// the sum is restricted to mask nodes inside the support set.
double lp_norm_p(const HorizontalField& f, double p, const Mask& mask);

// Mean of f over the mask; throws on an empty mask.
double ball_average(const ScalarField& f, const Mask& mask);

// CSV snapshot, header "ix,iy,it,x,y,t,value", rows in linear node order.
void write_field_csv(const ScalarField& f, const std::string& path);

}  // namespace hobs
