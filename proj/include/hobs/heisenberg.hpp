// Exact geometry of the first Heisenberg group H^1: group law, anisotropic
// dilations, Folland-Koranyi gauge, and a small family of analytic preset
// functions with hand-derived horizontal derivatives.
//
// Conventions (n = 1): points are (x, y, t), the left-invariant frame is
//   X = d/dx + 2y d/dt,   Y = d/dy - 2x d/dt,
// and the horizontal gradient of f is (Xf, Yf).
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hobs {

// Floor used in place of eps inside the (eps + |g|^2)^(p/2-1) factor when a
// caller requests the singular pair eps = 0, p < 2; shared by the exact
// preset calculus and the discrete operators.
inline constexpr double kEpsFloor = 1e-12;

template <typename Scalar>
struct PointT {
  Scalar x{};
  Scalar y{};
  Scalar t{};
};

using Point = PointT<double>;

// Group law: the vertical coordinate picks up twice the symplectic area
// 2*(x2*y1 - x1*y2) of the horizontal parts.
template <typename Scalar>
PointT<Scalar> group_mul(const PointT<Scalar>& a, const PointT<Scalar>& b) {
  return {a.x + b.x, a.y + b.y, a.t + b.t + 2 * (b.x * a.y - a.x * b.y)};
}

template <typename Scalar>
PointT<Scalar> group_inverse(const PointT<Scalar>& p) {
  return {-p.x, -p.y, -p.t};
}

// Folland-Koranyi gauge ((x^2+y^2)^2 + t^2)^(1/4).
template <typename Scalar>
Scalar fk_norm(const PointT<Scalar>& p) {
  const Scalar z2 = p.x * p.x + p.y * p.y;
  return std::sqrt(std::sqrt(z2 * z2 + p.t * p.t));
}

// Anisotropic dilation (x, y, t) -> (lx, ly, l^2 t); 1-homogeneous for the
// gauge: fk_norm(dilate(p, l)) = l * fk_norm(p).
template <typename Scalar>
PointT<Scalar> dilate(const PointT<Scalar>& p, Scalar lambda) {
  if (!(lambda > Scalar(0))) {
    throw std::invalid_argument("dilate: scale factor must be positive");
  }
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

enum class Preset {
  Constant,              // c
  CoordinateX,           // x
  CoordinateT,           // t
  HorizontalParaboloid,  // a + b*(x^2 + y^2)
  FullParaboloid,        // a + b*(x^2 + y^2 + t^2)
  Valley,                // -a + b*(x^2 + y^2 + t^2)
};

// A preset analytic function together with its exact horizontal calculus.
// Obstacles and boundary data enter the workbench only through this class,
// so exact operator values are always available on the continuum side.
class AnalyticFunction {
 public:
  AnalyticFunction(Preset preset, std::vector<double> params);

  static AnalyticFunction constant(double c) { return {Preset::Constant, {c}}; }
  static AnalyticFunction coordinate_x() { return {Preset::CoordinateX, {}}; }
  static AnalyticFunction coordinate_t() { return {Preset::CoordinateT, {}}; }
  static AnalyticFunction horizontal_paraboloid(double a, double b) {
    return {Preset::HorizontalParaboloid, {a, b}};
  }
  static AnalyticFunction full_paraboloid(double a, double b) {
    return {Preset::FullParaboloid, {a, b}};
  }
  static AnalyticFunction valley(double a, double b) { return {Preset::Valley, {a, b}}; }

  // Preset ids as used in config files; throws on an unknown id or a
  // parameter count mismatch.
  static AnalyticFunction from_name(const std::string& name, const std::vector<double>& params);

  Preset preset() const { return preset_; }
  const std::vector<double>& params() const { return params_; }
  std::string name() const;

  double operator()(const Point& p) const;

  // (Xf, Yf) at p, exact.
  Eigen::Vector2d horizontal_gradient(const Point& p) const;

  // Sub-Laplacian X(Xf) + Y(Yf) at p, exact.
  double sub_laplacian(const Point& p) const;

  // Horizontal gradient of s := |grad_H f|^2 at p, exact. Needed for the
  // chain rule in operator_value.
  Eigen::Vector2d gradient_sq_horizontal_gradient(const Point& p) const;

  // Exact value of div_H((eps + |grad_H f|^2)^(p/2-1) grad_H f) at p.
  // For the singular pair eps = 0, p < 2 the factor uses the same 1e-12
  // floor as the discrete calculus, which keeps the value finite at
  // degenerate points of f.
  double operator_value(const Point& p, double exponent_p, double eps) const;

 private:
  Preset preset_;
  std::vector<double> params_;
};

}  // namespace hobs
