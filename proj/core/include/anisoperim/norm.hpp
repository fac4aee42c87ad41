#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "anisoperim/linalg.hpp"

namespace anisoperim {

/// A 1-homogeneous, even, convex gauge H on R^2 with H^2 strongly convex
/// away from the origin. Built-in kinds carry analytic derivatives; Custom
/// norms fall back to central differences with steps relative to |xi|.
class Norm {
 public:
  enum class Kind { Euclidean, Ellipse, PNorm, Custom };

  using ValueFn = std::function<double(const Vec2&)>;
  using GradFn = std::function<Vec2(const Vec2&)>;
  using HessFn = std::function<Mat2(const Vec2&)>;

  static Norm euclidean();
  /// H(x) = (x1^2/a^2 + x2^2/b^2)^(1/2).
  static Norm ellipse(double a, double b);
  /// H(x) = (|x1|^p + |x2|^p)^(1/p); p < 2 is rejected.
  static Norm pnorm(double p);
  static Norm custom(ValueFn value, GradFn grad = {}, HessFn hess = {},
                     std::string name = "custom");

  double operator()(const Vec2& xi) const { return value(xi); }
  double value(const Vec2& xi) const;
  Vec2 gradient(const Vec2& xi) const;
  Mat2 hessian(const Vec2& xi) const;
  /// Hessian of F = H^2/2: F_ij = H_i H_j + H H_ij.
  Mat2 f_hessian(const Vec2& xi) const;

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool has_analytic_derivatives() const;
  std::string describe() const;

 private:
  Norm(Kind kind, double a, double b, double p);
  void estimate_bounds();

  struct CustomFns {
    ValueFn value;
    GradFn grad;
    HessFn hess;
    std::string name;
  };

  Kind kind_;
  double a_ = 1.0;
  double b_ = 1.0;
  double p_ = 2.0;
  double alpha_ = 1.0;
  double beta_ = 1.0;
  std::shared_ptr<const CustomFns> custom_;
};

/// The polar gauge H°(v) = sup_{xi != 0} (xi . v) / H(xi).
class PolarNorm {
 public:
  enum class Mode { Analytic, NumericSup };

  static constexpr int kDefaultAngularSamples = 720;
  static constexpr int kDefaultRefinementIterations = 60;

  /// Closed-form polar of a built-in norm. Throws Configuration for Custom.
  static PolarNorm analytic(const Norm& base);
  /// User-supplied polar for a Custom norm (value and gradient).
  static PolarNorm analytic(const Norm& base, Norm::ValueFn value, Norm::GradFn grad);
  /// Angular scan followed by golden-section refinement around the best sample.
  static PolarNorm numeric(const Norm& base, int angular_samples = kDefaultAngularSamples,
                           int refinement_iterations = kDefaultRefinementIterations);

  double operator()(const Vec2& v) const { return value(v); }
  double value(const Vec2& v) const;
  Vec2 gradient(const Vec2& v) const;
  /// Hessian of F° = (H°)^2/2, obtained from Legendre duality as the inverse
  /// of the base F-Hessian at grad F°(v). Never differentiates H° itself.
  Mat2 f_hessian(const Vec2& v) const;
  /// Hessian of H°, assembled from f_hessian and gradient.
  Mat2 hessian(const Vec2& v) const;

  const Norm& base() const { return base_; }
  Mode mode() const { return mode_; }
  int angular_samples() const { return samples_; }
  int refinement_iterations() const { return iterations_; }

 private:
  PolarNorm(Norm base, Mode mode, int samples, int iterations)
      : base_(std::move(base)), mode_(mode), samples_(samples), iterations_(iterations) {}

  /// Unit direction maximizing (e . v)/H(e), and the maximum.
  std::pair<Vec2, double> numeric_sup(const Vec2& v) const;

  Norm base_;
  Mode mode_;
  int samples_ = 0;
  int iterations_ = 0;
  Norm::ValueFn custom_value_;
  Norm::GradFn custom_grad_;
};

struct IdentityResiduals {
  double euler_h = 0.0;      // H(xi) - H_xi(xi).xi
  double euler_polar = 0.0;  // H°(xi) - H°_xi(xi).xi
  double unit_gauge = 0.0;   // H(H°_xi) - 1 and H°(H_xi) - 1
  double inverse_map = 0.0;  // H°(xi) H_xi(H°_xi(xi)) - xi, componentwise
  int samples = 0;

  double max() const;
};

/// Max absolute residuals of the Euler, unit-gauge and inverse-map identities
/// linking H and H° over deterministic pseudo-random samples.
IdentityResiduals identity_residuals(const Norm& norm, const PolarNorm& polar, int samples,
                                     unsigned seed = 12345);

}  // namespace anisoperim
