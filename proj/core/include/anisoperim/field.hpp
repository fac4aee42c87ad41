#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anisoperim/convex_curve.hpp"
#include "anisoperim/linalg.hpp"
#include "anisoperim/norm.hpp"

namespace anisoperim {

/// Uniform lattice; node (i, j) sits at origin + spacing * (i, j).
struct GridSpec {
  Vec2 origin = Vec2::Zero();
  double spacing = 1.0;
  int nx = 0;
  int ny = 0;

  Vec2 node(int i, int j) const { return origin + spacing * Vec2(i, j); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
  /// Lattice covering the bounding box of `domain` plus `margin` cells.
  static GridSpec covering(const ConvexCurve& domain, double spacing, int margin = 3);
};

/// Closed-form callbacks for u and (optionally) its derivatives. The value
/// callback should extend u naturally (negative) outside the domain.
struct AnalyticField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  std::function<Mat2(const Vec2&)> hessian;
};

/// A concave function in Phi_0(Omega) sampled on a grid. Immutable.
class ScalarField {
 public:
  struct Description {
    std::string name;
    double max_value = 0.0;
    Vec2 max_point = Vec2::Zero();
    std::optional<ConvexCurve> flat_top;  // closure of Omega minus E_u, if not a point
  };

  static ScalarField from_analytic(AnalyticField f, ConvexCurve boundary, double spacing,
                                   Description desc);
  /// Grid-only field. Omega = {u > 0}; its boundary is the zero contour.
  static ScalarField from_samples(GridSpec grid, std::vector<double> values,
                                  std::string name = "samples");

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double node_value(int i, int j) const { return values_[grid_.index(i, j)]; }
  bool in_domain(int i, int j) const { return mask_[grid_.index(i, j)] != 0; }
  bool in_flat_top(int i, int j) const { return flat_mask_[grid_.index(i, j)] != 0; }

  const ConvexCurve& boundary() const { return boundary_; }
  double max_value() const { return desc_.max_value; }
  const Vec2& max_point() const { return desc_.max_point; }
  const std::optional<ConvexCurve>& flat_top() const { return desc_.flat_top; }
  const std::string& name() const { return desc_.name; }
  bool has_analytic_value() const { return static_cast<bool>(analytic_.value); }
  bool has_analytic_derivatives() const {
    return analytic_.gradient && analytic_.hessian;
  }

  bool contains(const Vec2& x) const;
  /// Analytic value, or bilinear interpolation of node values.
  double value_at(const Vec2& x) const;
  /// Analytic derivatives when available, else bilinear interpolation of
  /// central differences. Throws Domain outside Omega and Stencil when the
  /// difference stencil leaves Omega.
  Vec2 gradient_at(const Vec2& x) const;
  Mat2 hessian_at(const Vec2& x) const;

  /// max |grad u| over domain nodes and boundary vertices.
  double max_gradient_norm() const;

 private:
  ScalarField() = default;
  void build_masks();
  template <typename F>
  auto interpolate_nodes(const Vec2& x, F&& node_fn) const;

  GridSpec grid_;
  std::vector<double> values_;
  std::vector<char> mask_;
  std::vector<char> flat_mask_;
  ConvexCurve boundary_ = ConvexCurve::from_vertices({{0, 0}, {1, 0}, {0, 1}});
  AnalyticField analytic_;
  Description desc_;
  double slack_ = 0.0;
};

/// Pointwise operator algebra at a point where grad u != 0.
struct OperatorTerms {
  double det_h = 0.0;                  // det(D^2 F(grad u)) det(D^2 u)
  double cofactor_form = 0.0;          // sum S^ij(A[u]) F_i(grad u) u_j
  double curvature_contraction = 0.0;  // -sum H_ij(grad u) u_ij
  double curvature_cofactor = 0.0;     // -H(grad u)^-3 cofactor_form
  double h_grad = 0.0;                 // H(grad u)
  double grad_norm = 0.0;              // |grad u|
};

OperatorTerms operator_terms(const Norm& norm, const Vec2& grad, const Mat2& hess);

double det_h_at(const ScalarField& field, const Norm& norm, const Vec2& x);
double cofactor_form_at(const ScalarField& field, const Norm& norm, const Vec2& x);
/// Anisotropic curvature of the level line through x. Computed two ways;
/// throws InternalConsistency when they disagree by more than 1e-4 relative.
double curvature_at(const ScalarField& field, const Norm& norm, const Vec2& x);

/// Closed, convexified marching-squares contour of {u = t}; t = 0 returns
/// the domain boundary.
ConvexCurve extract_level_set(const ScalarField& field, double t);

/// mu(t) = |{u > t}| at each level (t = 0 gives |Omega|).
std::vector<double> distribution(const ScalarField& field, const std::vector<double>& levels);

struct LevelSetProfile {
  std::vector<double> levels;
  std::vector<double> mu;
  std::vector<double> lambda;
  std::vector<double> lambda_prime;
  std::vector<double> mu_prime;
  /// False where derivative columns came from table differences because
  /// contour quadrature had no stencil (grid-only fields near the boundary).
  std::vector<bool> from_quadrature;
  double max_value = 0.0;
  double top_area = 0.0;       // |{u = M}|
  double top_perimeter = 0.0;  // P_H({u = M})
  /// Max relative mismatch between centred differences of lambda and the
  /// quadrature lambda' over levels t <= 0.75 M.
  double lambda_prime_fd_mismatch = 0.0;
};

/// Levels t_k = k M / n_levels, k = 0..n_levels-1.
LevelSetProfile profile(const ScalarField& field, const Norm& norm, int n_levels);

struct HessianIntegral {
  double direct = 0.0;          // int u det_H[u]
  double curvature_form = 0.0;  // 1/2 int k_H H(grad u)^3
  double parts_form = 0.0;      // -1/2 int S^ij F_i u_j

  double median() const;
  double max_pairwise_disagreement() const;
};

HessianIntegral hessian_integral(const ScalarField& field, const Norm& norm);

struct ReillyResult {
  double lhs = 0.0;  // int_{u>t} det_H[u]
  double rhs = 0.0;  // 1/2 int_{u=t} k_H H^3 / |grad u|
  double residual = 0.0;
  bool reliable = true;  // false when mu(t) spans fewer than 10 cells
};

ReillyResult reilly_residual(const ScalarField& field, const Norm& norm, double t);

/// Contour integral of k_H H(nu) over {u = t}; equals 2 kappa.
double level_set_gauss_bonnet(const ScalarField& field, const Norm& norm, double t);

/// u = delta^3 - dist(x, omega0)^3 on omega0 + delta D. Constant on omega0,
/// |grad u| constant along every level line.
ScalarField distance_field_example(const ConvexCurve& omega0, double delta, double spacing,
                                   int disk_resolution = 2048);

/// Visits midpoint quadrature points of {u > level}; cells cut by the level
/// line are split into sub x sub subcells. Weights are areas.
void for_each_quadrature_point(const ScalarField& field, double level,
                               const std::function<void(const Vec2&, double)>& visit,
                               int sub = 8);

/// Largest (u(x)+u(y))/2 - u((x+y)/2) over random node pairs with on-grid
/// midpoints; <= 0 for concave fields.
double concavity_violation(const ScalarField& field, int samples, unsigned seed = 7);

}  // namespace anisoperim
