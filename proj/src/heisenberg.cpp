#include "hobs/heisenberg.hpp"

namespace hobs {

namespace {

std::size_t expected_params(Preset preset) {
  switch (preset) {
    case Preset::Constant:
      return 1;
    case Preset::CoordinateX:
    case Preset::CoordinateT:
      return 0;
    case Preset::HorizontalParaboloid:
    case Preset::FullParaboloid:
    case Preset::Valley:
      return 2;
  }
  throw std::invalid_argument("AnalyticFunction: unknown preset id");
}

}  // namespace

AnalyticFunction::AnalyticFunction(Preset preset, std::vector<double> params)
    : preset_(preset), params_(std::move(params)) {
  if (params_.size() != expected_params(preset_)) {
    throw std::invalid_argument("AnalyticFunction: preset '" + name() +
                                "' expects " + std::to_string(expected_params(preset_)) +
                                " parameter(s), got " + std::to_string(params_.size()));
  }
  for (double v : params_) {
    if (!std::isfinite(v)) throw std::invalid_argument("AnalyticFunction: non-finite parameter");
  }
}

AnalyticFunction AnalyticFunction::from_name(const std::string& name,
                                             const std::vector<double>& params) {
  if (name == "constant") return {Preset::Constant, params};
  if (name == "coordinate-x") return {Preset::CoordinateX, params};
  if (name == "coordinate-t") return {Preset::CoordinateT, params};
  if (name == "horizontal-paraboloid") return {Preset::HorizontalParaboloid, params};
  if (name == "full-paraboloid") return {Preset::FullParaboloid, params};
  if (name == "valley") return {Preset::Valley, params};
  throw std::invalid_argument("AnalyticFunction: unknown preset id '" + name + "'");
}

std::string AnalyticFunction::name() const {
  switch (preset_) {
    case Preset::Constant:
      return "constant";
    case Preset::CoordinateX:
      return "coordinate-x";
    case Preset::CoordinateT:
      return "coordinate-t";
    case Preset::HorizontalParaboloid:
      return "horizontal-paraboloid";
    case Preset::FullParaboloid:
      return "full-paraboloid";
    case Preset::Valley:
      return "valley";
  }
  return "unknown";
}

double AnalyticFunction::operator()(const Point& p) const {
  switch (preset_) {
    case Preset::Constant:
      return params_[0];
    case Preset::CoordinateX:
      return p.x;
    case Preset::CoordinateT:
      return p.t;
    case Preset::HorizontalParaboloid:
      return params_[0] + params_[1] * (p.x * p.x + p.y * p.y);
    case Preset::FullParaboloid:
      return params_[0] + params_[1] * (p.x * p.x + p.y * p.y + p.t * p.t);
    case Preset::Valley:
      return -params_[0] + params_[1] * (p.x * p.x + p.y * p.y + p.t * p.t);
  }
  return 0.0;
}

// Hand-derived per preset. For f = a + b*(x^2+y^2+t^2):
//   Xf = 2b(x + 2yt),  Yf = 2b(y - 2xt).
Eigen::Vector2d AnalyticFunction::horizontal_gradient(const Point& p) const {
  switch (preset_) {
    case Preset::Constant:
      return {0.0, 0.0};
    case Preset::CoordinateX:
      return {1.0, 0.0};
    case Preset::CoordinateT:
      return {2.0 * p.y, -2.0 * p.x};
    case Preset::HorizontalParaboloid: {
      const double b = params_[1];
      return {2.0 * b * p.x, 2.0 * b * p.y};
    }
    case Preset::FullParaboloid:
    case Preset::Valley: {
      const double b = params_[1];
      return {2.0 * b * (p.x + 2.0 * p.y * p.t), 2.0 * b * (p.y - 2.0 * p.x * p.t)};
    }
  }
  return {0.0, 0.0};
}

// X(Xf) + Y(Yf). For the full paraboloid:
//   X(Xf) = 2b + 8b y^2,  Y(Yf) = 2b + 8b x^2.
double AnalyticFunction::sub_laplacian(const Point& p) const {
  switch (preset_) {
    case Preset::Constant:
    case Preset::CoordinateX:
    case Preset::CoordinateT:
      return 0.0;
    case Preset::HorizontalParaboloid:
      return 4.0 * params_[1];
    case Preset::FullParaboloid:
    case Preset::Valley: {
      const double b = params_[1];
      return 4.0 * b * (1.0 + 2.0 * (p.x * p.x + p.y * p.y));
    }
  }
  return 0.0;
}

// grad_H of s = |grad_H f|^2. For the full paraboloid
//   s = 4b^2 (x^2+y^2)(1+4t^2),
//   X(s) = 8b^2 [x(1+4t^2) + 8yt(x^2+y^2)],
//   Y(s) = 8b^2 [y(1+4t^2) - 8xt(x^2+y^2)].
Eigen::Vector2d AnalyticFunction::gradient_sq_horizontal_gradient(const Point& p) const {
  switch (preset_) {
    case Preset::Constant:
    case Preset::CoordinateX:
      return {0.0, 0.0};
    case Preset::CoordinateT:
      return {8.0 * p.x, 8.0 * p.y};
    case Preset::HorizontalParaboloid: {
      const double b = params_[1];
      return {8.0 * b * b * p.x, 8.0 * b * b * p.y};
    }
    case Preset::FullParaboloid:
    case Preset::Valley: {
      const double b = params_[1];
      const double r2 = p.x * p.x + p.y * p.y;
      const double vt = 1.0 + 4.0 * p.t * p.t;
      return {8.0 * b * b * (p.x * vt + 8.0 * p.y * p.t * r2),
              8.0 * b * b * (p.y * vt - 8.0 * p.x * p.t * r2)};
    }
  }
  return {0.0, 0.0};
}

double AnalyticFunction::operator_value(const Point& p, double exponent_p, double eps) const {
  const Eigen::Vector2d g = horizontal_gradient(p);
  const double s = g.squaredNorm();
  const double lap = sub_laplacian(p);
  double base = eps + s;
  if (eps == 0.0 && exponent_p < 2.0) base = kEpsFloor + s;
  const double q = exponent_p / 2.0 - 1.0;
  // A f = (eps+s)^q * Lap_H f + q (eps+s)^(q-1) * (grad f . grad s).
  const double major = (q == 0.0) ? lap : std::pow(base, q) * lap;
  double minor = 0.0;
  if (q != 0.0) {
    const double dot = g.dot(gradient_sq_horizontal_gradient(p));
    if (dot != 0.0) minor = q * std::pow(base, q - 1.0) * dot;
  }
  return major + minor;
}

}  // namespace hobs
