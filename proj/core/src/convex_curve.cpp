#include "anisoperim/convex_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisoperim/error.hpp"

namespace anisoperim {
namespace {

double extent(const std::vector<Vec2>& v) {
  double e = 0.0;
  for (const auto& p : v) e = std::max(e, p.cwiseAbs().maxCoeff());
  return std::max(e, 1.0);
}

double signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

// Drops coincident neighbours and vertices where the boundary runs straight
// through or doubles back on itself (needles).
std::vector<Vec2> clean(std::vector<Vec2> v) {
  const double dup_tol = ConvexCurve::kTolerance * extent(v);
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Vec2> out;
    out.reserve(v.size());
    for (const auto& p : v) {
      if (out.empty() || (p - out.back()).norm() > dup_tol) out.push_back(p);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= dup_tol) out.pop_back();
    if (out.size() != v.size()) changed = true;
    v = std::move(out);
    if (v.size() < 3) break;

    std::vector<bool> drop(v.size(), false);
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e0 = v[i] - v[(i + n - 1) % n];
      const Vec2 e1 = v[(i + 1) % n] - v[i];
      if (std::abs(cross(e0, e1)) <= ConvexCurve::kTolerance * e0.norm() * e1.norm()) {
        drop[i] = true;
        changed = true;
        break;  // one at a time keeps neighbour relations valid
      }
    }
    if (changed) {
      std::vector<Vec2> kept;
      for (std::size_t i = 0; i < n; ++i)
        if (!drop[i]) kept.push_back(v[i]);
      v = std::move(kept);
    }
  }
  return v;
}

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b, Vec2* nearest) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = a + t * ab;
  if (nearest) *nearest = q;
  return (x - q).norm();
}

}  // namespace

ConvexCurve ConvexCurve::from_vertices(std::vector<Vec2> vertices) {
  for (const auto& p : vertices) {
    if (!is_finite(p)) throw Error(ErrorKind::InvalidCurve, "non-finite vertex");
  }
  auto v = clean(std::move(vertices));
  if (v.size() < 3) throw Error(ErrorKind::InvalidCurve, "fewer than 3 distinct vertices");
  if (!(signed_area(v) > 0.0)) {
    throw Error(ErrorKind::InvalidCurve, "vertices must be counterclockwise with positive area");
  }
  const std::size_t n = v.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    const double c = cross(e0, e1);
    if (c < -kTolerance * e0.norm() * e1.norm()) {
      throw Error(ErrorKind::InvalidCurve, "polygon is not convex");
    }
    turning += std::atan2(c, e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6) {
    throw Error(ErrorKind::InvalidCurve, "polygon winds more than once");
  }
  return ConvexCurve(std::move(v));
}

ConvexCurve ConvexCurve::hull(std::span<const Vec2> points) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw Error(ErrorKind::InvalidCurve, "hull needs at least 3 points");
  std::vector<Vec2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return from_vertices(std::move(h));
}

bool ConvexCurve::contains(const Vec2& x, double slack) const {
  const std::size_t n = size();
  auto outside = [&](std::size_t i) {
    const Vec2 e = edge(i);
    return cross(e, x - vertices_[i]) < -slack * e.norm();
  };
  if (n < 32) {
    for (std::size_t i = 0; i < n; ++i)
      if (outside(i)) return false;
    return true;
  }
  if (outside(0) || outside(n - 1)) return false;
  // Fan from vertex 0: largest i with x left of the ray v0 -> v_i.
  const Vec2 d = x - vertices_[0];
  std::size_t lo = 1, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (cross(vertices_[mid] - vertices_[0], d) >= 0.0 ? lo : hi) = mid;
  }
  return !outside(lo);
}

double ConvexCurve::distance(const Vec2& x) const {
  if (contains(x)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    best = std::min(best, point_segment_distance(x, vertices_[i], vertices_[(i + 1) % size()],
                                                 nullptr));
  }
  return best;
}

Vec2 ConvexCurve::nearest_point(const Vec2& x) const {
  if (contains(x)) return x;
  double best = std::numeric_limits<double>::infinity();
  Vec2 out = vertices_[0];
  for (std::size_t i = 0; i < size(); ++i) {
    Vec2 q;
    const double d = point_segment_distance(x, vertices_[i], vertices_[(i + 1) % size()], &q);
    if (d < best) {
      best = d;
      out = q;
    }
  }
  return out;
}

Vec2 ConvexCurve::centroid() const {
  Vec2 c = Vec2::Zero();
  double a = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % size()];
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

std::pair<Vec2, Vec2> ConvexCurve::bounds() const {
  Vec2 lo = vertices_[0];
  Vec2 hi = vertices_[0];
  for (const auto& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

double area(const ConvexCurve& curve) { return signed_area(curve.vertices()); }

double euclidean_perimeter(const ConvexCurve& curve) {
  double s = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) s += curve.edge(i).norm();
  return s;
}

double perimeter_h(const ConvexCurve& curve, const Norm& norm) {
  double s = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec2 e = curve.edge(i);
    if (e.norm() == 0.0) throw Error(ErrorKind::InvalidCurve, "degenerate edge");
    // H(nu)|e| = H(|e| nu) with the outward normal of a CCW edge.
    s += norm.value(Vec2(e.y(), -e.x()));
  }
  return s;
}

ConvexCurve minkowski_sum(const ConvexCurve& a, const ConvexCurve& b) {
  auto rotate_to_bottom = [](const std::vector<Vec2>& v) {
    std::size_t start = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].y() < v[start].y() || (v[i].y() == v[start].y() && v[i].x() < v[start].x()))
        start = i;
    }
    std::vector<Vec2> out(v.begin() + static_cast<std::ptrdiff_t>(start), v.end());
    out.insert(out.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
    return out;
  };
  const auto p = rotate_to_bottom(a.vertices());
  const auto q = rotate_to_bottom(b.vertices());
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  std::vector<Vec2> out;
  out.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    out.push_back(p[i % n] + q[j % m]);
    const Vec2 ea = p[(i + 1) % n] - p[i % n];
    const Vec2 eb = q[(j + 1) % m] - q[j % m];
    double c = cross(ea, eb);
    if (std::abs(c) <= ConvexCurve::kTolerance * ea.norm() * eb.norm() && ea.dot(eb) > 0.0) c = 0.0;
    if (j >= m || (i < n && c > 0.0)) {
      ++i;
    } else if (i >= n || c < 0.0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return ConvexCurve::from_vertices(std::move(out));
}

ConvexCurve wulff_curve(const PolarNorm& polar, double radius, const Vec2& center, int n) {
  if (n < 16) throw Error(ErrorKind::Configuration, "wulff_curve needs n >= 16");
  if (!(radius > 0.0)) throw Error(ErrorKind::Configuration, "wulff radius must be positive");
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Vec2 e = unit_direction(2.0 * kPi * k / n);
    v.push_back(center + radius * e / polar.value(e));
  }
  return ConvexCurve::from_vertices(std::move(v));
}

double kappa_of(const PolarNorm& polar, int n) {
  if (n < 64) throw Error(ErrorKind::Configuration, "kappa_of needs n >= 64");
  return area(wulff_curve(polar, 1.0, n));
}

WulffShape WulffShape::make(const PolarNorm& polar, double radius, const Vec2& center,
                            int kappa_resolution) {
  return WulffShape{polar, radius, center, kappa_of(polar, kappa_resolution)};
}

Report SteinerResiduals::to_report(double tolerance) const {
  Report r;
  r.at_most("steiner_perimeter_rel", perimeter_relative, tolerance);
  r.at_most("steiner_area_rel", area_relative, tolerance);
  return r;
}

SteinerResiduals steiner_gauss_bonnet_check(const ConvexCurve& k, const Norm& norm,
                                            const PolarNorm& polar, double delta, double kappa,
                                            int wulff_resolution) {
  if (!(delta > 0.0)) throw Error(ErrorKind::Configuration, "delta must be positive");
  const ConvexCurve sum = minkowski_sum(k, wulff_curve(polar, delta, wulff_resolution));
  const double pk = perimeter_h(k, norm);
  const double ak = area(k);
  SteinerResiduals r;
  r.perimeter = std::abs(perimeter_h(sum, norm) - pk - 2.0 * kappa * delta);
  r.area = std::abs(area(sum) - ak - pk * delta - kappa * delta * delta);
  r.perimeter_relative = r.perimeter / pk;
  r.area_relative = r.area / ak;
  return r;
}

double isoperimetric_deficit(const ConvexCurve& k, const Norm& norm, double kappa) {
  const double p = perimeter_h(k, norm);
  return p * p - 4.0 * kappa * area(k);
}

ConvexCurve random_convex_polygon(std::mt19937_64& rng, int points, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (;;) {
    std::vector<Vec2> p;
    for (int i = 0; i < points; ++i) p.emplace_back(u(rng), u(rng));
    try {
      return ConvexCurve::hull(p);
    } catch (const Error&) {
      // collinear draw; resample
    }
  }
}

}  // namespace anisoperim
