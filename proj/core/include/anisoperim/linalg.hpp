#pragma once

#include <Eigen/Core>
#include <cmath>

namespace anisoperim {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.14159265358979323846;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); }

inline Vec2 unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Cofactor matrix in the (S^ij) convention: [[b22, -b21], [-b12, b11]].
/// For a non-symmetric B this is the transpose of the adjugate.
inline Mat2 cofactor(const Mat2& b) {
  Mat2 s;
  s << b(1, 1), -b(1, 0), -b(0, 1), b(0, 0);
  return s;
}

}  // namespace anisoperim
