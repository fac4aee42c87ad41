#pragma once

// Closed forms and brute-force references. Nothing here calls into the
// library, so a bug there cannot hide behind a matching bug here.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

using P = std::array<double, 2>;

inline double ellipse_norm(double a, double b, double x, double y) {
  return std::sqrt(x * x / (a * a) + y * y / (b * b));
}
inline double ellipse_polar(double a, double b, double x, double y) {
  return std::sqrt(a * a * x * x + b * b * y * y);
}
inline double pnorm(double p, double x, double y) {
  return std::pow(std::pow(std::abs(x), p) + std::pow(std::abs(y), p), 1.0 / p);
}
inline double pnorm_polar(double p, double x, double y) {
  return pnorm(p / (p - 1.0), x, y);
}

// sup over `samples` directions of (e . v) / H(e).
inline double brute_polar(const std::function<double(double, double)>& h, double vx, double vy,
                          int samples = 100000) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * pi * k / samples;
    const double c = std::cos(t), s = std::sin(t);
    best = std::max(best, (c * vx + s * vy) / h(c, s));
  }
  return best;
}

inline double shoelace(const std::vector<P>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P& p = v[i];
    const P& q = v[(i + 1) % v.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

// Sum over edges of H(outer normal) |e| = H(rotated edge) by homogeneity.
inline double anisotropic_perimeter(const std::vector<P>& v,
                                    const std::function<double(double, double)>& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P& p = v[i];
    const P& q = v[(i + 1) % v.size()];
    s += h(q[1] - p[1], -(q[0] - p[0]));
  }
  return s;
}

// Area of the polygon inscribed in the ellipse with semi-axes (ax, by) at n
// equally spaced parameter angles: (n/2) ax by sin(2 pi / n).
inline double inscribed_ellipse_area(double ax, double by, int n) {
  return 0.5 * n * ax * by * std::sin(2.0 * pi / n);
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Hessian integral of the radial field 1 - (r/R)^q on W_R: kappa int |w'|^3.
inline double wulff_power_hessian_integral(double kappa, double radius, double q) {
  return kappa * q * q * q / ((3.0 * q - 2.0) * radius * radius);
}

// delta^3 - d^3 around any convex C^2 body in the plane: the integral of
// u det D^2u depends only on delta, 27 pi delta^7 / 7.
inline double distance_cube_hessian_integral(double delta) {
  return 27.0 * pi * std::pow(delta, 7) / 7.0;
}

// Radial solution for constant data c: w(r) = sqrt(c) (R^2 - r^2) / 2.
inline double constant_data_w(double c, double radius, double r) {
  return std::sqrt(c) * (radius * radius - r * r) / 2.0;
}

// v(s) for f* = 1 in the perimeter variable.
inline double constant_data_v(double kappa, double radius, double s) {
  return (4.0 * kappa * kappa * radius * radius - s * s) / (8.0 * kappa * kappa);
}

}  // namespace oracle
