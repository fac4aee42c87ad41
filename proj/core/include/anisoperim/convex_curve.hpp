#pragma once

#include <random>
#include <span>
#include <vector>

#include "anisoperim/linalg.hpp"
#include "anisoperim/norm.hpp"
#include "anisoperim/report.hpp"

namespace anisoperim {

/// Closed convex polygon, counterclockwise, last vertex implicitly joined to
/// the first. Collinear and duplicate vertices are removed on construction.
class ConvexCurve {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Cleans and validates; throws InvalidCurve on clockwise, non-convex or
  /// degenerate input.
  static ConvexCurve from_vertices(std::vector<Vec2> vertices);
  /// Convex hull (monotone chain) of an arbitrary point cloud.
  static ConvexCurve hull(std::span<const Vec2> points);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
  Vec2 edge(std::size_t i) const { return vertices_[(i + 1) % size()] - vertices_[i]; }

  bool contains(const Vec2& x, double slack = 0.0) const;
  /// Euclidean distance to the filled polygon (0 inside) and the nearest point.
  double distance(const Vec2& x) const;
  Vec2 nearest_point(const Vec2& x) const;
  Vec2 centroid() const;
  /// Lower-left and upper-right corners of the bounding box.
  std::pair<Vec2, Vec2> bounds() const;

 private:
  explicit ConvexCurve(std::vector<Vec2> v) : vertices_(std::move(v)) {}
  std::vector<Vec2> vertices_;
};

double area(const ConvexCurve& curve);
double euclidean_perimeter(const ConvexCurve& curve);
/// Anisotropic perimeter: sum over edges of H(outer normal) * length. Exact
/// for polygons since the normal is edge-constant.
double perimeter_h(const ConvexCurve& curve, const Norm& norm);

/// Minkowski sum by slope-ordered edge merge, O(n + m).
ConvexCurve minkowski_sum(const ConvexCurve& a, const ConvexCurve& b);

/// Polygon with vertices center + R e_k / H°(e_k), e_k at angles 2 pi k / n.
ConvexCurve wulff_curve(const PolarNorm& polar, double radius, const Vec2& center, int n);
inline ConvexCurve wulff_curve(const PolarNorm& polar, double radius, int n) {
  return wulff_curve(polar, radius, Vec2::Zero(), n);
}

/// Area of the unit Wulff polygon at resolution n (second-order accurate).
double kappa_of(const PolarNorm& polar, int n = 8192);

struct WulffShape {
  PolarNorm polar;
  double radius = 1.0;
  Vec2 center = Vec2::Zero();
  double kappa = 0.0;

  static WulffShape make(const PolarNorm& polar, double radius,
                         const Vec2& center = Vec2::Zero(), int kappa_resolution = 8192);
  ConvexCurve curve(int n) const { return wulff_curve(polar, radius, center, n); }
};

struct SteinerResiduals {
  double perimeter = 0.0;           // |P_H(K+dW) - P_H(K) - 2 kappa d|
  double area = 0.0;                // ||K+dW| - |K| - P_H(K) d - kappa d^2|
  double perimeter_relative = 0.0;  // divided by P_H(K)
  double area_relative = 0.0;       // divided by |K|

  Report to_report(double tolerance) const;
};

/// Steiner formulas for K + delta W; the perimeter residual is the
/// first-variation form of anisotropic Gauss-Bonnet.
SteinerResiduals steiner_gauss_bonnet_check(const ConvexCurve& k, const Norm& norm,
                                            const PolarNorm& polar, double delta, double kappa,
                                            int wulff_resolution = 8192);

/// P_H(K)^2 - 4 kappa |K|.
double isoperimetric_deficit(const ConvexCurve& k, const Norm& norm, double kappa);

/// Hull of uniformly random points in [-scale, scale]^2.
ConvexCurve random_convex_polygon(std::mt19937_64& rng, int points, double scale = 1.0);

}  // namespace anisoperim
