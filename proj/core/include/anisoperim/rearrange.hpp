#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anisoperim/field.hpp"
#include "anisoperim/report.hpp"

namespace anisoperim {

/// Piecewise-linear non-increasing function of s on [0, s_max].
struct RadialProfile {
  enum class Kind { DecreasingRearrangement, PerimeterRearrangement, RadialSolution };

  Kind kind = Kind::DecreasingRearrangement;
  std::vector<double> breakpoints;
  std::vector<double> values;
  std::vector<double> slopes;           // per interval, size breakpoints - 1
  std::vector<double> node_derivative;  // optional exact derivative at breakpoints
  double s_max = 0.0;

  /// Validates monotonicity and fills slopes. Throws Profile.
  static RadialProfile from_table(Kind kind, std::vector<double> s, std::vector<double> v);

  /// Linear interpolation; 0 beyond s_max.
  double operator()(double s) const;
  /// Same, but continued past s_max with the last slope (negative outside).
  double extended(double s) const;
  /// Interval slope (backward convention at breakpoints).
  double slope_at(double s) const;
  double max_abs_slope() const;
  /// Largest increase of the slope between consecutive intervals; <= 0 when concave.
  double concavity_defect() const;
};

/// u* from the mu table of the field, sampled at levels t_k = k M / n.
RadialProfile decreasing_rearrangement(const ScalarField& field, int n);

/// f* of weighted samples (value, weight), on n + 1 uniform nodes of [0, sum w].
RadialProfile decreasing_rearrangement(std::vector<std::pair<double, double>> samples, int n);

/// u♦ as the generalized inverse of lambda_H.
RadialProfile perimeter_rearrangement(const LevelSetProfile& profile);

struct SymmetrizedField {
  RadialProfile profile;
  PolarNorm polar = PolarNorm::analytic(Norm::euclidean());
  double kappa = kPi;
  double domain_radius = 1.0;
  Vec2 center = Vec2::Zero();

  /// Profile parameter of x: 2 kappa H°(x - c) or kappa H°(x - c)^2.
  double parameter(const Vec2& x) const;
  double operator()(const Vec2& x) const;
  /// ||.||_p, p = infinity allowed.
  double lp_norm(double p) const;
  /// Radius of the Wulff shape {u > t}, by bisection along a ray.
  double superlevel_radius(double t) const;
  ConvexCurve superlevel_set(double t, int n = 8192) const;
  /// Re-samples onto a grid as an analytic-valued field.
  ScalarField to_field(double spacing, int curve_n = 4096) const;
};

SymmetrizedField convex_symmetrand(const ScalarField& field, const PolarNorm& polar,
                                   int n_levels = 64);
SymmetrizedField star_symmetrand(const ScalarField& field, const Norm& norm,
                                 const PolarNorm& polar, int n_levels = 64);
/// Same, reusing a profile already computed for `norm`.
SymmetrizedField star_symmetrand(const LevelSetProfile& profile, const PolarNorm& polar);

/// ||u||_p by cell quadrature over Omega.
double field_lp_norm(const ScalarField& field, double p);

struct LpRow {
  double p = 0.0;
  double field_norm = 0.0;
  double star_norm = 0.0;
  double margin = 0.0;  // (star - field) / field
};

std::vector<LpRow> lp_report(const ScalarField& field, const SymmetrizedField& star,
                             const std::vector<double>& ps);
Report lp_checks(const std::vector<LpRow>& rows, double tolerance = 0.01,
                 double infinity_tolerance = 1e-9);

/// 4 kappa^3 int |u♦'|^3 ds, or kappa int |w'|^3 dr for radial solutions.
double radial_hessian_integral(const RadialProfile& profile, double kappa);

struct PolyaSzego {
  HessianIntegral field_estimates;
  double field_integral = 0.0;  // median of the three estimates
  double star_integral = 0.0;
  double margin = 0.0;          // (field - star) / |field|
};

PolyaSzego polya_szego_report(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                              int n_levels = 64);

/// Rearrangement invariants of one field as report rows: round trip,
/// perimeter preservation, Lipschitz bound, concavity of u♦, L^p.
Report rearrangement_checks(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                            int n_levels = 64);

}  // namespace anisoperim
