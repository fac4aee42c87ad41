#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anisoperim/field.hpp"

namespace anisoperim {

/// u = 1 - (H°(x - c)/R)^q on W_R(c). q = 2 is the radial fixed point of
/// the star symmetrization; q = 1 has Wulff level sets with lambda linear in t.
ScalarField wulff_power_field(const PolarNorm& polar, double radius, const Vec2& center, double q,
                              double spacing, int curve_n = 4096);

/// u = 1 - G(T(x - c))^2 on c + T^-1 {G < 1}, G any gauge.
ScalarField linear_image_field(const Norm& gauge, const Mat2& transform, const Vec2& center,
                               double spacing, std::string name, int curve_n = 4096);

/// Scaled soft minimum of the edge distances of a convex polygon,
/// u = -(c/k) log sum exp(-k l_i), normalized so that max u = 1.
ScalarField softmin_polygon_field(const ConvexCurve& polygon, double sharpness, double spacing,
                                  std::string name, int rays = 1024);

/// u = delta^3 - dist(x, E)^3 on E + delta D with E the ellipse x^2/a^2 + y^2/b^2 < 1.
ScalarField distance_field_ellipse(double a, double b, double delta, double spacing,
                                   int curve_n = 2048);

struct FieldRecipe {
  std::string name;
  std::function<ScalarField(double spacing)> build;
  bool radial = false;          // already u = u^star for this norm
  bool equality_case = false;   // Polya-Szego holds with equality
  bool positive_rhs = true;     // det_H[u] > 0 almost everywhere
};

/// The ten fields used by the verification suites, specialised to a norm.
std::vector<FieldRecipe> manufactured_suite(const Norm& norm, const PolarNorm& polar);

/// The norms swept by the suites: Euclidean, Ellipse(2, 1), PNorm(4).
std::vector<Norm> suite_norms();

}  // namespace anisoperim
