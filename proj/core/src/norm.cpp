#include "anisoperim/norm.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "anisoperim/error.hpp"

namespace anisoperim {
namespace {

constexpr double kFdStep = 1e-5;      // relative to |xi|, first derivatives
constexpr double kFdStep2 = 1e-4;     // relative to |xi|, second differences of values
constexpr int kBoundDirections = 2048;

void require_finite(const Vec2& v, const char* what) {
  if (!is_finite(v)) throw Error(ErrorKind::InvalidInput, std::string(what) + ": non-finite input");
}

void require_nonzero(const Vec2& v, const char* what) {
  require_finite(v, what);
  if (v.x() == 0.0 && v.y() == 0.0) {
    throw Error(ErrorKind::SingularPoint, std::string(what) + ": not differentiable at the origin");
  }
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// (|x1|^p + |x2|^p)^(1/p), scaled to avoid overflow for large p.
double lp_value(const Vec2& x, double p) {
  const double m = std::max(std::abs(x.x()), std::abs(x.y()));
  if (m == 0.0) return 0.0;
  const double s = std::pow(std::abs(x.x()) / m, p) + std::pow(std::abs(x.y()) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec2 lp_gradient(const Vec2& x, double p) {
  const double h = lp_value(x, p);
  return {sgn(x.x()) * std::pow(std::abs(x.x()) / h, p - 1.0),
          sgn(x.y()) * std::pow(std::abs(x.y()) / h, p - 1.0)};
}

Mat2 lp_hessian(const Vec2& x, double p) {
  const double h = lp_value(x, p);
  const Vec2 r(std::abs(x.x()) / h, std::abs(x.y()) / h);
  const Vec2 g = lp_gradient(x, p);
  Mat2 out;
  out(0, 0) = std::pow(r.x(), p - 2.0) - g.x() * g.x();
  out(1, 1) = std::pow(r.y(), p - 2.0) - g.y() * g.y();
  out(0, 1) = out(1, 0) = -g.x() * g.y();
  return (p - 1.0) / h * out;
}

Vec2 fd_gradient(const Norm::ValueFn& f, const Vec2& xi) {
  const double h = kFdStep * xi.norm();
  Vec2 g;
  for (int i = 0; i < 2; ++i) {
    Vec2 e = Vec2::Zero();
    e[i] = h;
    g[i] = (f(xi + e) - f(xi - e)) / (2.0 * h);
  }
  return g;
}

Mat2 fd_hessian_from_gradient(const Norm::GradFn& g, const Vec2& xi) {
  const double h = kFdStep * xi.norm();
  Mat2 out;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = h;
    out.col(j) = (g(xi + e) - g(xi - e)) / (2.0 * h);
  }
  return 0.5 * (out + out.transpose());
}

Mat2 fd_hessian_from_values(const Norm::ValueFn& f, const Vec2& xi) {
  const double h = kFdStep2 * xi.norm();
  const Vec2 e1(h, 0.0);
  const Vec2 e2(0.0, h);
  const double f0 = f(xi);
  Mat2 out;
  out(0, 0) = (f(xi + e1) - 2.0 * f0 + f(xi - e1)) / (h * h);
  out(1, 1) = (f(xi + e2) - 2.0 * f0 + f(xi - e2)) / (h * h);
  out(0, 1) = out(1, 0) =
      (f(xi + e1 + e2) - f(xi + e1 - e2) - f(xi - e1 + e2) + f(xi - e1 - e2)) / (4.0 * h * h);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Norm

Norm::Norm(Kind kind, double a, double b, double p) : kind_(kind), a_(a), b_(b), p_(p) {}

Norm Norm::euclidean() {
  Norm n(Kind::Euclidean, 1.0, 1.0, 2.0);
  n.estimate_bounds();
  return n;
}

Norm Norm::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::Configuration, "ellipse norm requires finite a > 0 and b > 0");
  }
  Norm n(Kind::Ellipse, a, b, 2.0);
  n.estimate_bounds();
  return n;
}

Norm Norm::pnorm(double p) {
  if (!std::isfinite(p) || p < 2.0) {
    throw Error(ErrorKind::Configuration,
                "p-norm requires finite p >= 2 (H^2 must be C^2 away from the origin)");
  }
  Norm n(Kind::PNorm, 1.0, 1.0, p);
  n.estimate_bounds();
  return n;
}

Norm Norm::custom(ValueFn value, GradFn grad, HessFn hess, std::string name) {
  if (!value) throw Error(ErrorKind::Configuration, "custom norm needs an evaluator");
  Norm n(Kind::Custom, 1.0, 1.0, 2.0);
  n.custom_ = std::make_shared<const CustomFns>(
      CustomFns{std::move(value), std::move(grad), std::move(hess), std::move(name)});
  n.estimate_bounds();
  return n;
}

void Norm::estimate_bounds() {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k < kBoundDirections; ++k) {
    const double h = value(unit_direction(2.0 * kPi * k / kBoundDirections));
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  if (!(lo > 0.0) || !std::isfinite(hi)) {
    throw Error(ErrorKind::Configuration, "norm must be positive and finite on unit directions");
  }
  alpha_ = lo;
  beta_ = hi;
}

bool Norm::has_analytic_derivatives() const {
  return kind_ != Kind::Custom || (custom_->grad && custom_->hess);
}

double Norm::value(const Vec2& xi) const {
  require_finite(xi, "norm value");
  switch (kind_) {
    case Kind::Euclidean:
      return xi.norm();
    case Kind::Ellipse:
      return std::hypot(xi.x() / a_, xi.y() / b_);
    case Kind::PNorm:
      return lp_value(xi, p_);
    case Kind::Custom:
      break;
  }
  if (xi.x() == 0.0 && xi.y() == 0.0) return 0.0;
  return custom_->value(xi);
}

Vec2 Norm::gradient(const Vec2& xi) const {
  require_nonzero(xi, "norm gradient");
  switch (kind_) {
    case Kind::Euclidean:
      return xi / xi.norm();
    case Kind::Ellipse:
      return Vec2(xi.x() / (a_ * a_), xi.y() / (b_ * b_)) / value(xi);
    case Kind::PNorm:
      return lp_gradient(xi, p_);
    case Kind::Custom:
      break;
  }
  if (custom_->grad) return custom_->grad(xi);
  return fd_gradient(custom_->value, xi);
}

Mat2 Norm::hessian(const Vec2& xi) const {
  require_nonzero(xi, "norm hessian");
  switch (kind_) {
    case Kind::Euclidean: {
      const double r = xi.norm();
      const Vec2 u = xi / r;
      return (Mat2::Identity() - u * u.transpose()) / r;
    }
    case Kind::Ellipse: {
      const double h = value(xi);
      const Vec2 g = gradient(xi);
      Mat2 d = Mat2::Zero();
      d(0, 0) = 1.0 / (a_ * a_);
      d(1, 1) = 1.0 / (b_ * b_);
      return (d - g * g.transpose()) / h;
    }
    case Kind::PNorm:
      return lp_hessian(xi, p_);
    case Kind::Custom:
      break;
  }
  if (custom_->hess) return custom_->hess(xi);
  if (custom_->grad) return fd_hessian_from_gradient(custom_->grad, xi);
  return fd_hessian_from_values(custom_->value, xi);
}

Mat2 Norm::f_hessian(const Vec2& xi) const {
  require_nonzero(xi, "F hessian");
  if (kind_ == Kind::Euclidean) return Mat2::Identity();
  if (kind_ == Kind::Ellipse) {
    Mat2 d = Mat2::Zero();
    d(0, 0) = 1.0 / (a_ * a_);
    d(1, 1) = 1.0 / (b_ * b_);
    return d;
  }
  const Vec2 g = gradient(xi);
  const Mat2 m = g * g.transpose() + value(xi) * hessian(xi);
  return 0.5 * (m + m.transpose());
}

std::string Norm::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Euclidean:
      os << "euclidean";
      break;
    case Kind::Ellipse:
      os << "ellipse(a=" << a_ << ",b=" << b_ << ")";
      break;
    case Kind::PNorm:
      os << "pnorm(p=" << p_ << ")";
      break;
    case Kind::Custom:
      os << custom_->name;
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- PolarNorm

PolarNorm PolarNorm::analytic(const Norm& base) {
  if (base.kind() == Norm::Kind::Custom) {
    throw Error(ErrorKind::Configuration,
                "analytic polar of a custom norm needs user-supplied callbacks");
  }
  return PolarNorm(base, Mode::Analytic, 0, 0);
}

PolarNorm PolarNorm::analytic(const Norm& base, Norm::ValueFn value, Norm::GradFn grad) {
  if (!value) throw Error(ErrorKind::Configuration, "analytic polar needs an evaluator");
  PolarNorm p(base, Mode::Analytic, 0, 0);
  p.custom_value_ = std::move(value);
  p.custom_grad_ = std::move(grad);
  return p;
}

PolarNorm PolarNorm::numeric(const Norm& base, int angular_samples, int refinement_iterations) {
  if (angular_samples < 8) {
    throw Error(ErrorKind::Configuration, "numeric polar needs at least 8 angular samples");
  }
  if (refinement_iterations < 0) {
    throw Error(ErrorKind::Configuration, "refinement iterations must be non-negative");
  }
  return PolarNorm(base, Mode::NumericSup, angular_samples, refinement_iterations);
}

std::pair<Vec2, double> PolarNorm::numeric_sup(const Vec2& v) const {
  auto ratio = [&](double theta) {
    const Vec2 e = unit_direction(theta);
    return e.dot(v) / base_.value(e);
  };
  const double step = 2.0 * kPi / samples_;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples_; ++k) {
    const double f = ratio(step * k);
    if (f > best_val) {
      best_val = f;
      best = k;
    }
  }
  // Golden-section search on the bracket around the best sample.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = step * (best - 1);
  double hi = step * (best + 1);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  for (int it = 0; it < iterations_ && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = ratio(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = ratio(x1);
    }
  }
  double theta = 0.5 * (lo + hi);
  double f = ratio(theta);
  if (best_val > f) {
    theta = step * best;
    f = best_val;
  }
  return {unit_direction(theta), f};
}

double PolarNorm::value(const Vec2& v) const {
  require_finite(v, "polar value");
  if (v.x() == 0.0 && v.y() == 0.0) return 0.0;
  if (mode_ == Mode::NumericSup) return numeric_sup(v).second;
  if (custom_value_) return custom_value_(v);
  switch (base_.kind()) {
    case Norm::Kind::Euclidean:
      return v.norm();
    case Norm::Kind::Ellipse:
      return std::hypot(base_.a() * v.x(), base_.b() * v.y());
    case Norm::Kind::PNorm:
      return lp_value(v, base_.p() / (base_.p() - 1.0));
    case Norm::Kind::Custom:
      break;
  }
  throw Error(ErrorKind::Configuration, "analytic polar unavailable");
}

Vec2 PolarNorm::gradient(const Vec2& v) const {
  require_nonzero(v, "polar gradient");
  if (mode_ == Mode::NumericSup) {
    // Danskin: the gradient of a sup of linear forms is the maximizing form.
    const Vec2 e = numeric_sup(v).first;
    return e / base_.value(e);
  }
  if (custom_value_) {
    if (custom_grad_) return custom_grad_(v);
    return fd_gradient(custom_value_, v);
  }
  switch (base_.kind()) {
    case Norm::Kind::Euclidean:
      return v / v.norm();
    case Norm::Kind::Ellipse: {
      const double a2 = base_.a() * base_.a();
      const double b2 = base_.b() * base_.b();
      return Vec2(a2 * v.x(), b2 * v.y()) / value(v);
    }
    case Norm::Kind::PNorm:
      return lp_gradient(v, base_.p() / (base_.p() - 1.0));
    case Norm::Kind::Custom:
      break;
  }
  throw Error(ErrorKind::Configuration, "analytic polar unavailable");
}

Mat2 PolarNorm::f_hessian(const Vec2& v) const {
  require_nonzero(v, "polar F hessian");
  if (mode_ == Mode::Analytic && !custom_value_) {
    if (base_.kind() == Norm::Kind::Euclidean) return Mat2::Identity();
    if (base_.kind() == Norm::Kind::Ellipse) {
      Mat2 d = Mat2::Zero();
      d(0, 0) = base_.a() * base_.a();
      d(1, 1) = base_.b() * base_.b();
      return d;
    }
  }
  // grad F and grad F° are mutually inverse maps.
  const Vec2 xi = value(v) * gradient(v);
  const Mat2 m = base_.f_hessian(xi).inverse();
  return 0.5 * (m + m.transpose());
}

Mat2 PolarNorm::hessian(const Vec2& v) const {
  const Vec2 g = gradient(v);
  return (f_hessian(v) - g * g.transpose()) / value(v);
}

// ---------------------------------------------------------------- residuals

double IdentityResiduals::max() const {
  return std::max({euler_h, euler_polar, unit_gauge, inverse_map});
}

IdentityResiduals identity_residuals(const Norm& norm, const PolarNorm& polar, int samples,
                                     unsigned seed) {
  if (samples < 1) throw Error(ErrorKind::Configuration, "samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  IdentityResiduals r;
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Vec2 xi = radius(rng) * unit_direction(angle(rng));
    const Vec2 gh = norm.gradient(xi);
    const Vec2 gp = polar.gradient(xi);
    r.euler_h = std::max(r.euler_h, std::abs(norm.value(xi) - gh.dot(xi)));
    r.euler_polar = std::max(r.euler_polar, std::abs(polar.value(xi) - gp.dot(xi)));
    r.unit_gauge = std::max(
        {r.unit_gauge, std::abs(norm.value(gp) - 1.0), std::abs(polar.value(gh) - 1.0)});
    const Vec2 d1 = polar.value(xi) * norm.gradient(gp) - xi;
    const Vec2 d2 = norm.value(xi) * polar.gradient(gh) - xi;
    r.inverse_map = std::max({r.inverse_map, d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff()});
  }
  return r;
}

}  // namespace anisoperim
