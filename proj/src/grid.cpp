#include "hobs/grid.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hobs/report.hpp"

namespace hobs {

Grid Grid::build(const Point& lo, const Point& hi, int nx, int ny, int nt) {
  if (!(hi.x > lo.x) || !(hi.y > lo.y) || !(hi.t > lo.t)) {
    throw std::invalid_argument("Grid: box must have positive extent along every axis");
  }
  if (nx < 3 || ny < 3 || nt < 3) {
    throw std::invalid_argument("Grid: resolution must be at least 3 nodes per axis");
  }
  Grid g;
  g.lo = lo;
  g.hi = hi;
  g.nx = nx;
  g.ny = ny;
  g.nt = nt;
  g.hx = (hi.x - lo.x) / (nx - 1);
  g.hy = (hi.y - lo.y) / (ny - 1);
  g.ht = (hi.t - lo.t) / (nt - 1);
  return g;
}

ScalarField sample(const AnalyticFunction& f, const Grid& g) {
  ScalarField out(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) out.values[i] = f(g.node(i));
  return out;
}

Mask fk_ball_mask(const Grid& g, const Point& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("fk_ball_mask: radius must be positive");
  Mask mask(g);
  const Point inv = group_inverse(center);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    mask.values[i] = fk_norm(group_mul(inv, g.node(i))) < radius;
  }
  return mask;
}

Mask interior_mask(const Grid& g) { return deep_interior_mask(g, 1); }

Mask deep_interior_mask(const Grid& g, int depth) {
  Mask mask(g);
  for (int it = depth; it < g.nt - depth; ++it)
    for (int iy = depth; iy < g.ny - depth; ++iy)
      for (int ix = depth; ix < g.nx - depth; ++ix) mask.values[g.index(ix, iy, it)] = true;
  return mask;
}

double lp_norm_p(const ScalarField& f, double p, const Mask& mask) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_p: exponent must be >= 1");
  if (!(f.grid == mask.grid)) throw std::invalid_argument("lp_norm_p: grid mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.grid.size(); ++i) {
    if (mask.values[i]) acc += std::pow(std::abs(f.values[i]), p);
  }
  return acc * f.grid.cell_weight();
}

double lp_norm_p(const HorizontalField& f, double p, const Mask& mask) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_p: exponent must be >= 1");
  if (!(f.grid == mask.grid)) throw std::invalid_argument("lp_norm_p: grid mismatch");
  const Grid& g = f.grid;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!mask.values[i]) continue;
    const auto [ix, iy, it] = g.unindex(i);
    if (!g.in_support(ix, iy, it)) continue;
    acc += std::pow(std::hypot(f.xcomp[i], f.ycomp[i]), p);
  }
  return acc * g.cell_weight();
}

double ball_average(const ScalarField& f, const Mask& mask) {
  if (!(f.grid == mask.grid)) throw std::invalid_argument("ball_average: grid mismatch");
  const Eigen::Index n = mask.count();
  if (n == 0) throw std::invalid_argument("ball_average: empty mask");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.grid.size(); ++i) {
    if (mask.values[i]) acc += f.values[i];
  }
  return acc / static_cast<double>(n);
}

void write_field_csv(const ScalarField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field_csv: cannot open '" + path + "'");
  out << "ix,iy,it,x,y,t,value\n";
  const Grid& g = f.grid;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto [ix, iy, it] = g.unindex(i);
    const Point p = g.node(ix, iy, it);
    out << ix << ',' << iy << ',' << it << ',' << format_double(p.x) << ','
        << format_double(p.y) << ',' << format_double(p.t) << ',' << format_double(f.values[i])
        << '\n';
  }
  if (!out) throw std::runtime_error("write_field_csv: write failed for '" + path + "'");
}

}  // namespace hobs
