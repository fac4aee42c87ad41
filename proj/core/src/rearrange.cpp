#include "anisoperim/rearrange.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "anisoperim/error.hpp"

namespace anisoperim {

RadialProfile RadialProfile::from_table(Kind kind, std::vector<double> s, std::vector<double> v) {
  if (s.size() != v.size() || s.size() < 2) {
    throw Error(ErrorKind::Profile, "profile needs at least two matching samples");
  }
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) throw Error(ErrorKind::Profile, "breakpoints not increasing");
    if (v[i] > v[i - 1] + 1e-12 * scale) {
      throw Error(ErrorKind::Profile, "profile increases at s = " + std::to_string(s[i]));
    }
  }
  RadialProfile p;
  p.kind = kind;
  p.s_max = s.back();
  p.slopes.resize(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    p.slopes[i] = std::min(0.0, (v[i + 1] - v[i]) / (s[i + 1] - s[i]));
  }
  p.breakpoints = std::move(s);
  p.values = std::move(v);
  return p;
}

double RadialProfile::operator()(double s) const {
  if (s > s_max) return 0.0;
  return extended(s);
}

double RadialProfile::extended(double s) const {
  if (s <= breakpoints.front()) return values.front();
  if (s >= s_max) return values.back() + slopes.back() * (s - s_max);
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s);
  const auto i = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  if (s == breakpoints[i]) return values[i];
  return values[i] + (values[i + 1] - values[i]) * (s - breakpoints[i]) /
                         (breakpoints[i + 1] - breakpoints[i]);
}

double RadialProfile::slope_at(double s) const {
  if (s <= breakpoints.front()) return 0.0;
  if (s > s_max) return slopes.back();
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), s);
  return slopes[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

double RadialProfile::max_abs_slope() const {
  double m = 0.0;
  for (double d : slopes) m = std::max(m, std::abs(d));
  return m;
}

double RadialProfile::concavity_defect() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    const double width = 0.5 * (breakpoints[i + 1] - breakpoints[i - 1]);
    worst = std::max(worst, (slopes[i] - slopes[i - 1]) * width);
  }
  return worst;
}

namespace {

// Generalized inverse of a strictly decreasing table s_k = m(t_k), closed at
// the top by linear extrapolation of the last interval to t = M (clamped to
// [s_floor, s_{n-1}]) and a plateau down to s = 0.
RadialProfile inverse_table(RadialProfile::Kind kind, const std::vector<double>& t,
                            const std::vector<double>& s, double max_value, double s_floor) {
  const std::size_t n = t.size();
  if (n < 2) throw Error(ErrorKind::Profile, "table too short to invert");
  for (std::size_t k = 1; k < n; ++k) {
    if (!(s[k] < s[k - 1])) {
      throw Error(ErrorKind::Profile,
                  "table not strictly decreasing at t = " + std::to_string(t[k]));
    }
  }
  double s_top = s[n - 1] + (s[n - 1] - s[n - 2]) * (max_value - t[n - 1]) / (t[n - 1] - t[n - 2]);
  s_top = std::clamp(s_top, std::max(0.0, s_floor), s[n - 1]);

  std::vector<double> bs, vs;
  auto push = [&](double b, double v) {
    if (!bs.empty() && b <= bs.back()) return;  // sup convention: keep the larger t
    bs.push_back(b);
    vs.push_back(v);
  };
  if (s_top > 0.0) push(0.0, max_value);
  push(s_top, max_value);
  for (std::size_t k = n; k-- > 0;) push(s[k], t[k]);
  return RadialProfile::from_table(kind, std::move(bs), std::move(vs));
}

std::vector<double> uniform_levels(double max_value, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = max_value * k / n;
  return t;
}

}  // namespace

RadialProfile decreasing_rearrangement(const ScalarField& field, int n) {
  if (n < 8) throw Error(ErrorKind::Configuration, "decreasing rearrangement needs n >= 8");
  const auto t = uniform_levels(field.max_value(), n);
  const auto mu = distribution(field, t);
  const double top = field.flat_top() ? area(*field.flat_top()) : 0.0;
  return inverse_table(RadialProfile::Kind::DecreasingRearrangement, t, mu, field.max_value(), top);
}

RadialProfile decreasing_rearrangement(std::vector<std::pair<double, double>> samples, int n) {
  if (n < 8) throw Error(ErrorKind::Configuration, "decreasing rearrangement needs n >= 8");
  if (samples.empty()) throw Error(ErrorKind::InvalidData, "no samples to rearrange");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> cum(samples.size());
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second >= 0.0)) throw Error(ErrorKind::InvalidData, "negative weight");
    total += samples[i].second;
    cum[i] = total;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidData, "samples carry no weight");
  std::vector<double> s(static_cast<std::size_t>(n) + 1), v(s.size());
  for (int j = 0; j <= n; ++j) {
    const double sj = total * j / n;
    // u*(s) = sup{t : mu(t) > s}: first sample whose cumulative weight exceeds s.
    auto it = std::upper_bound(cum.begin(), cum.end(), sj);
    if (it == cum.end()) --it;
    s[static_cast<std::size_t>(j)] = sj;
    v[static_cast<std::size_t>(j)] = samples[static_cast<std::size_t>(it - cum.begin())].first;
  }
  return RadialProfile::from_table(RadialProfile::Kind::DecreasingRearrangement, std::move(s),
                                   std::move(v));
}

RadialProfile perimeter_rearrangement(const LevelSetProfile& profile) {
  return inverse_table(RadialProfile::Kind::PerimeterRearrangement, profile.levels, profile.lambda,
                       profile.max_value, profile.top_perimeter);
}

// ---------------------------------------------------------------- SymmetrizedField

double SymmetrizedField::parameter(const Vec2& x) const {
  const double r = polar.value(x - center);
  return profile.kind == RadialProfile::Kind::PerimeterRearrangement ? 2.0 * kappa * r
                                                                      : kappa * r * r;
}

double SymmetrizedField::operator()(const Vec2& x) const { return profile.extended(parameter(x)); }

double SymmetrizedField::lp_norm(double p) const {
  if (std::isinf(p)) return profile.values.front();
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "L^p norm needs p >= 1");
  static constexpr std::array<double, 4> node = {-0.8611363115940526, -0.3399810435848563,
                                                  0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> weight = {0.3478548451374538, 0.6521451548625461,
                                                    0.6521451548625461, 0.3478548451374538};
  const bool perimeter = profile.kind == RadialProfile::Kind::PerimeterRearrangement;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < profile.breakpoints.size(); ++i) {
    const double a = profile.breakpoints[i], b = profile.breakpoints[i + 1];
    const double half = 0.5 * (b - a);
    for (std::size_t q = 0; q < node.size(); ++q) {
      const double s = a + half * (1.0 + node[q]);
      const double v = std::max(0.0, profile.values[i] + profile.slopes[i] * (s - a));
      // |{u > t}| is s for u*, s^2/(4 kappa) for u♦.
      sum += weight[q] * half * std::pow(v, p) * (perimeter ? s / (2.0 * kappa) : 1.0);
    }
  }
  return std::pow(sum, 1.0 / p);
}

double SymmetrizedField::superlevel_radius(double t) const {
  const Vec2 e = Vec2(1.0, 0.0) / polar.value(Vec2(1.0, 0.0));
  double lo = 0.0, hi = domain_radius;
  if (!((*this)(center) > t)) return 0.0;
  if ((*this)(center + hi * e) > t) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * domain_radius; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(center + mid * e) > t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ConvexCurve SymmetrizedField::superlevel_set(double t, int n) const {
  const double r = superlevel_radius(t);
  if (!(r > 0.0)) throw Error(ErrorKind::EmptyLevel, "symmetrand has no points above the level");
  return wulff_curve(polar, r, center, n);
}

ScalarField SymmetrizedField::to_field(double spacing, int curve_n) const {
  AnalyticField f;
  const SymmetrizedField self = *this;
  f.value = [self](const Vec2& x) { return self(x); };
  ScalarField::Description desc;
  desc.name = "symmetrized";
  desc.max_value = profile.values.front();
  desc.max_point = center;
  if (profile.values.size() > 1 && profile.values[1] == profile.values[0]) {
    const double b = profile.breakpoints[1];
    const double r = profile.kind == RadialProfile::Kind::PerimeterRearrangement
                         ? b / (2.0 * kappa)
                         : std::sqrt(b / kappa);
    if (r > 0.0) desc.flat_top = wulff_curve(polar, r, center, curve_n);
  }
  return ScalarField::from_analytic(std::move(f), wulff_curve(polar, domain_radius, center, curve_n),
                                    spacing, std::move(desc));
}

SymmetrizedField convex_symmetrand(const ScalarField& field, const PolarNorm& polar,
                                   int n_levels) {
  SymmetrizedField s;
  s.profile = decreasing_rearrangement(field, n_levels);
  s.polar = polar;
  s.kappa = kappa_of(polar);
  s.domain_radius = std::sqrt(s.profile.s_max / s.kappa);
  return s;
}

SymmetrizedField star_symmetrand(const LevelSetProfile& profile, const PolarNorm& polar) {
  SymmetrizedField s;
  s.profile = perimeter_rearrangement(profile);
  s.polar = polar;
  s.kappa = kappa_of(polar);
  s.domain_radius = s.profile.s_max / (2.0 * s.kappa);
  return s;
}

SymmetrizedField star_symmetrand(const ScalarField& field, const Norm& norm,
                                 const PolarNorm& polar, int n_levels) {
  return star_symmetrand(profile(field, norm, n_levels), polar);
}

double field_lp_norm(const ScalarField& field, double p) {
  if (std::isinf(p)) return field.max_value();
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "L^p norm needs p >= 1");
  double sum = 0.0;
  for_each_quadrature_point(field, 0.0, [&](const Vec2& x, double w) {
    sum += w * std::pow(std::max(0.0, field.value_at(x)), p);
  });
  return std::pow(sum, 1.0 / p);
}

std::vector<LpRow> lp_report(const ScalarField& field, const SymmetrizedField& star,
                             const std::vector<double>& ps) {
  std::vector<LpRow> rows;
  for (double p : ps) {
    LpRow r;
    r.p = p;
    r.field_norm = field_lp_norm(field, p);
    r.star_norm = star.lp_norm(p);
    r.margin = (r.star_norm - r.field_norm) / r.field_norm;
    rows.push_back(r);
  }
  return rows;
}

Report lp_checks(const std::vector<LpRow>& rows, double tolerance, double infinity_tolerance) {
  Report rep;
  for (const auto& r : rows) {
    if (std::isinf(r.p)) {
      rep.at_most("lp_inf_gap", std::abs(r.margin), infinity_tolerance);
    } else {
      rep.at_least("min_lp_margin_p" + format_double(r.p), r.margin, -tolerance);
    }
  }
  return rep;
}

double radial_hessian_integral(const RadialProfile& profile, double kappa) {
  switch (profile.kind) {
    case RadialProfile::Kind::PerimeterRearrangement: {
      double sum = 0.0;
      for (std::size_t i = 0; i < profile.slopes.size(); ++i) {
        const double d = std::abs(profile.slopes[i]);
        sum += d * d * d * (profile.breakpoints[i + 1] - profile.breakpoints[i]);
      }
      return 4.0 * kappa * kappa * kappa * sum;
    }
    case RadialProfile::Kind::RadialSolution: {
      const auto& d = profile.node_derivative;
      if (d.size() != profile.breakpoints.size()) {
        throw Error(ErrorKind::Profile, "radial solution has no derivative samples");
      }
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        const double a = std::abs(d[i]), b = std::abs(d[i + 1]);
        sum += 0.5 * (a * a * a + b * b * b) * (profile.breakpoints[i + 1] - profile.breakpoints[i]);
      }
      return kappa * sum;
    }
    case RadialProfile::Kind::DecreasingRearrangement:
      break;
  }
  throw Error(ErrorKind::Profile, "Hessian integral is defined for u♦ and radial solutions only");
}

PolyaSzego polya_szego_report(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                              int n_levels) {
  PolyaSzego ps;
  ps.field_estimates = hessian_integral(field, norm);
  ps.field_integral = ps.field_estimates.median();
  const SymmetrizedField star = star_symmetrand(field, norm, polar, n_levels);
  ps.star_integral = radial_hessian_integral(star.profile, star.kappa);
  ps.margin = (ps.field_integral - ps.star_integral) / std::abs(ps.field_integral);
  return ps;
}

Report rearrangement_checks(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                            int n_levels) {
  Report rep;
  const LevelSetProfile prof = profile(field, norm, n_levels);
  const SymmetrizedField star = star_symmetrand(prof, polar);
  const RadialProfile& sharp = star.profile;

  double trip = 0.0;
  for (std::size_t k = 0; k < prof.levels.size(); ++k) {
    trip = std::max(trip, std::abs(sharp(prof.lambda[k]) - prof.levels[k]));
  }
  rep.at_most("roundtrip", trip, 1e-9);

  double perim = 0.0;
  for (std::size_t k = 0; k < prof.levels.size(); ++k) {
    const double p = perimeter_h(star.superlevel_set(prof.levels[k]), norm);
    perim = std::max(perim, std::abs(p - prof.lambda[k]) / prof.lambda[k]);
  }
  rep.at_most("perimeter_preservation_rel", perim, 1e-3);

  const double c = norm.beta() * field.max_gradient_norm() / (2.0 * star.kappa);
  rep.at_most("lipschitz_ratio", sharp.max_abs_slope() / c, 1.0 + 1e-3);
  rep.at_most("concavity_defect", sharp.concavity_defect() / field.max_value(), 1e-6);

  rep.append(lp_checks(lp_report(field, star, {1.0, 2.0, std::numeric_limits<double>::infinity()})));
  return rep;
}

}  // namespace anisoperim
