#include "anisoperim/manufactured.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <numeric>

#include "anisoperim/error.hpp"

namespace anisoperim {

ScalarField wulff_power_field(const PolarNorm& polar, double radius, const Vec2& center, double q,
                              double spacing, int curve_n) {
  if (!(radius > 0.0) || !(q >= 1.0)) {
    throw Error(ErrorKind::Configuration, "wulff field needs R > 0 and q >= 1");
  }
  const double rq = std::pow(radius, q);
  AnalyticField f;
  f.value = [=](const Vec2& x) { return 1.0 - std::pow(polar.value(x - center), q) / rq; };
  f.gradient = [=](const Vec2& x) -> Vec2 {
    const Vec2 y = x - center;
    const double r = polar.value(y);
    if (r == 0.0) return Vec2::Zero();
    return -(q / rq) * std::pow(r, q - 1.0) * polar.gradient(y);
  };
  // D^2 (r^q) = q r^(q-2) [(q-2) grad r grad r^T + D^2 F°]
  f.hessian = [=](const Vec2& x) -> Mat2 {
    const Vec2 y = x - center;
    const double r = polar.value(y);
    if (r == 0.0) return Mat2::Zero();
    const Vec2 g = polar.gradient(y);
    return -(q / rq) * std::pow(r, q - 2.0) * ((q - 2.0) * g * g.transpose() + polar.f_hessian(y));
  };
  ScalarField::Description desc;
  desc.name = "wulff-q" + std::to_string(static_cast<int>(q));
  desc.max_value = 1.0;
  desc.max_point = center;
  return ScalarField::from_analytic(std::move(f), wulff_curve(polar, radius, center, curve_n),
                                    spacing, std::move(desc));
}

ScalarField linear_image_field(const Norm& gauge, const Mat2& transform, const Vec2& center,
                               double spacing, std::string name, int curve_n) {
  if (!(std::abs(transform.determinant()) > 0.0)) {
    throw Error(ErrorKind::Configuration, "transform must be invertible");
  }
  AnalyticField f;
  f.value = [=](const Vec2& x) {
    const double g = gauge.value(transform * (x - center));
    return 1.0 - g * g;
  };
  f.gradient = [=](const Vec2& x) -> Vec2 {
    const Vec2 y = transform * (x - center);
    const double g = gauge.value(y);
    if (g == 0.0) return Vec2::Zero();
    return -2.0 * g * transform.transpose() * gauge.gradient(y);
  };
  f.hessian = [=](const Vec2& x) -> Mat2 {
    Vec2 y = transform * (x - center);
    if (y.norm() == 0.0) y = Vec2(1.0, 0.0);  // D^2 F is 0-homogeneous
    return -2.0 * transform.transpose() * gauge.f_hessian(y) * transform;
  };
  const Mat2 inv = transform.inverse();
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(curve_n));
  for (int k = 0; k < curve_n; ++k) {
    const Vec2 e = unit_direction(2.0 * kPi * k / curve_n);
    pts.push_back(center + inv * (e / gauge.value(e)));
  }
  ScalarField::Description desc;
  desc.name = std::move(name);
  desc.max_value = 1.0;
  desc.max_point = center;
  return ScalarField::from_analytic(std::move(f), ConvexCurve::hull(pts), spacing, std::move(desc));
}

namespace {

struct Softmin {
  std::vector<Vec2> normals;  // outward unit normals
  std::vector<double> offsets;
  double k = 1.0;

  // Weights p_i of the soft minimum and the soft minimum itself.
  double eval(const Vec2& x, std::vector<double>& p) const {
    const std::size_t n = normals.size();
    p.resize(n);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = offsets[i] - normals[i].dot(x);
      lo = std::min(lo, p[i]);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::exp(-k * (p[i] - lo));
      sum += p[i];
    }
    for (auto& w : p) w /= sum;
    return lo - std::log(sum) / k;
  }
  Vec2 grad(const std::vector<double>& p) const {
    Vec2 m = Vec2::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) m += p[i] * normals[i];
    return -m;
  }
  Mat2 hess(const std::vector<double>& p) const {
    Vec2 m = Vec2::Zero();
    Mat2 s = Mat2::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) {
      m += p[i] * normals[i];
      s += p[i] * normals[i] * normals[i].transpose();
    }
    return -k * (s - m * m.transpose());
  }
};

}  // namespace

ScalarField softmin_polygon_field(const ConvexCurve& polygon, double sharpness, double spacing,
                                  std::string name, int rays) {
  if (!(sharpness > 0.0) || rays < 16) {
    throw Error(ErrorKind::Configuration, "softmin field needs sharpness > 0 and >= 16 rays");
  }
  Softmin sm;
  sm.k = sharpness;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2 e = polygon.edge(i);
    const Vec2 n = Vec2(e.y(), -e.x()).normalized();
    sm.normals.push_back(n);
    sm.offsets.push_back(n.dot(polygon[i]));
  }

  // Newton for the maximiser.
  std::vector<double> p;
  Vec2 x = polygon.centroid();
  for (int it = 0; it < 100; ++it) {
    sm.eval(x, p);
    const Vec2 step = sm.hess(p).ldlt().solve(sm.grad(p));
    x -= step;
    if (step.norm() < 1e-15) break;
  }
  const double top = sm.eval(x, p);
  if (!(top > 0.0)) throw Error(ErrorKind::Configuration, "softmin field has no positive part");
  const double scale = 1.0 / top;

  std::vector<Vec2> boundary;
  boundary.reserve(static_cast<std::size_t>(rays));
  for (int r = 0; r < rays; ++r) {
    const Vec2 dir = unit_direction(2.0 * kPi * r / rays);
    double lo = 0.0, hi = 1.0;
    while (sm.eval(x + hi * dir, p) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (sm.eval(x + mid * dir, p) > 0.0 ? lo : hi) = mid;
    }
    boundary.push_back(x + lo * dir);
  }

  AnalyticField f;
  f.value = [sm, scale](const Vec2& y) {
    std::vector<double> w;
    return scale * sm.eval(y, w);
  };
  f.gradient = [sm, scale](const Vec2& y) -> Vec2 {
    std::vector<double> w;
    sm.eval(y, w);
    return scale * sm.grad(w);
  };
  f.hessian = [sm, scale](const Vec2& y) -> Mat2 {
    std::vector<double> w;
    sm.eval(y, w);
    return scale * sm.hess(w);
  };
  ScalarField::Description desc;
  desc.name = std::move(name);
  desc.max_value = 1.0;
  desc.max_point = x;
  return ScalarField::from_analytic(std::move(f), ConvexCurve::hull(boundary), spacing,
                                    std::move(desc));
}

namespace {

struct EllipseFoot {
  Vec2 point;
  double distance = 0.0;
  double curvature = 0.0;
};

// Closest point on the ellipse for x outside it: the foot is
// (a^2 x/(s + a^2), b^2 y/(s + b^2)) for the unique root s > 0 of
// (a x/(s + a^2))^2 + (b y/(s + b^2))^2 = 1.
EllipseFoot ellipse_foot(double a, double b, const Vec2& x) {
  const double ax = a * std::abs(x.x()), by = b * std::abs(x.y());
  auto f = [&](double s) {
    const double u = ax / (s + a * a), v = by / (s + b * b);
    return u * u + v * v - 1.0;
  };
  double lo = 0.0, hi = ax + by;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  EllipseFoot out;
  out.point = Vec2(a * a * x.x() / (s + a * a), b * b * x.y() / (s + b * b));
  out.distance = (x - out.point).norm();
  const double gx = out.point.x() / (a * a), gy = out.point.y() / (b * b);
  out.curvature = 1.0 / (a * a * b * b * std::pow(gx * gx + gy * gy, 1.5));
  return out;
}

bool inside_ellipse(double a, double b, const Vec2& x) {
  return (x.x() * x.x()) / (a * a) + (x.y() * x.y()) / (b * b) <= 1.0;
}

}  // namespace

ScalarField distance_field_ellipse(double a, double b, double delta, double spacing, int curve_n) {
  if (!(a > 0.0) || !(b > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorKind::Configuration, "ellipse semi-axes and delta must be positive");
  }
  const double d3 = delta * delta * delta;
  AnalyticField f;
  f.value = [=](const Vec2& x) {
    if (inside_ellipse(a, b, x)) return d3;
    const double d = ellipse_foot(a, b, x).distance;
    return d3 - d * d * d;
  };
  f.gradient = [=](const Vec2& x) -> Vec2 {
    if (inside_ellipse(a, b, x)) return Vec2::Zero();
    const EllipseFoot e = ellipse_foot(a, b, x);
    return -3.0 * e.distance * (x - e.point);
  };
  f.hessian = [=](const Vec2& x) -> Mat2 {
    if (inside_ellipse(a, b, x)) return Mat2::Zero();
    const EllipseFoot e = ellipse_foot(a, b, x);
    const double d = e.distance;
    const Vec2 n = (x - e.point) / d;
    const Mat2 nn = n * n.transpose();
    const Mat2 hd = e.curvature / (1.0 + e.curvature * d) * (Mat2::Identity() - nn);
    return -(6.0 * d * nn + 3.0 * d * d * hd);
  };
  std::vector<Vec2> inner, outer;
  for (int k = 0; k < curve_n; ++k) {
    const double th = 2.0 * kPi * k / curve_n;
    const Vec2 p(a * std::cos(th), b * std::sin(th));
    const Vec2 n = Vec2(p.x() / (a * a), p.y() / (b * b)).normalized();
    inner.push_back(p);
    outer.push_back(p + delta * n);
  }
  ScalarField::Description desc;
  desc.name = "distance-cube";
  desc.max_value = d3;
  desc.max_point = Vec2::Zero();
  desc.flat_top = ConvexCurve::hull(inner);
  return ScalarField::from_analytic(std::move(f), ConvexCurve::hull(outer), spacing,
                                    std::move(desc));
}

std::vector<Norm> suite_norms() { return {Norm::euclidean(), Norm::ellipse(2.0, 1.0), Norm::pnorm(4.0)}; }

namespace {

Mat2 rotation(double degrees) {
  const double t = degrees * kPi / 180.0;
  Mat2 r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

// Maps the unit gauge ball onto a rotated box of semi-axes (sx, sy).
Mat2 image_transform(double sx, double sy, double degrees) {
  return Eigen::Vector2d(1.0 / sx, 1.0 / sy).asDiagonal() * rotation(-degrees);
}

ConvexCurve regular_polygon(int n, double r, double phase) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) v.push_back(r * unit_direction(phase + 2.0 * kPi * k / n));
  return ConvexCurve::from_vertices(v);
}

}  // namespace

std::vector<FieldRecipe> manufactured_suite(const Norm& norm, const PolarNorm& polar) {
  const bool euclid = norm.kind() == Norm::Kind::Euclidean;
  std::vector<FieldRecipe> s;
  s.push_back({"wulff-quadratic",
               [polar](double h) { return wulff_power_field(polar, 1.0, Vec2::Zero(), 2.0, h); },
               true, true, true});
  s.push_back({"wulff-quartic",
               [polar](double h) { return wulff_power_field(polar, 1.0, Vec2::Zero(), 4.0, h); },
               false, false, true});
  s.push_back({"wulff-shifted",
               [polar](double h) {
                 return wulff_power_field(polar, 0.8, Vec2(0.3, -0.2), 2.0, h);
               },
               false, false, true});
  s.push_back({"euclid-disk-quadratic",
               [](double h) {
                 return linear_image_field(Norm::euclidean(), Mat2::Identity(), Vec2::Zero(), h,
                                           "euclid-disk-quadratic");
               },
               euclid, euclid, true});
  s.push_back({"rotated-ellipse",
               [](double h) {
                 return linear_image_field(Norm::euclidean(), image_transform(0.9, 0.45, 30.0),
                                           Vec2::Zero(), h, "rotated-ellipse");
               },
               false, false, true});
  s.push_back({"thin-ellipse",
               [](double h) {
                 return linear_image_field(Norm::euclidean(), image_transform(1.0, 0.25, 0.0),
                                           Vec2::Zero(), h, "thin-ellipse");
               },
               false, false, true});
  s.push_back({"superellipse",
               [](double h) {
                 return linear_image_field(Norm::pnorm(4.0), image_transform(0.8, 0.6, 20.0),
                                           Vec2::Zero(), h, "superellipse");
               },
               false, false, true});
  s.push_back({"softmin-pentagon",
               [](double h) {
                 return softmin_polygon_field(regular_polygon(5, 1.0, 0.3), 10.0, h,
                                              "softmin-pentagon");
               },
               false, false, true});
  s.push_back({"softmin-rectangle",
               [](double h) {
                 const auto rect = ConvexCurve::from_vertices(
                     {{-0.9, -0.5}, {0.9, -0.5}, {0.9, 0.5}, {-0.9, 0.5}});
                 return softmin_polygon_field(rect, 8.0, h, "softmin-rectangle");
               },
               false, false, true});
  s.push_back({"distance-cube",
               [](double h) { return distance_field_ellipse(0.5, 0.3, 0.3, h); }, false, euclid,
               false});
  return s;
}

}  // namespace anisoperim
