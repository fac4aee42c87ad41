#include "anisoperim/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisoperim/error.hpp"

namespace anisoperim {
namespace {

// Cumulative integral of the piecewise-linear f*, zero past s_max.
class Primitive {
 public:
  explicit Primitive(const RadialProfile& f) : f_(f), cum_(f.breakpoints.size(), 0.0) {
    for (std::size_t i = 1; i < cum_.size(); ++i) {
      cum_[i] = cum_[i - 1] + 0.5 * (f.values[i] + f.values[i - 1]) *
                                  (f.breakpoints[i] - f.breakpoints[i - 1]);
    }
  }
  double operator()(double b) const {
    const auto& bp = f_.breakpoints;
    if (b <= bp.front()) return 0.0;
    if (b >= bp.back()) return cum_.back();
    const auto i = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), b) - bp.begin()) - 1;
    const double fb = f_.values[i] + f_.slopes[i] * (b - bp[i]);
    return cum_[i] + 0.5 * (f_.values[i] + fb) * (b - bp[i]);
  }

 private:
  const RadialProfile& f_;
  std::vector<double> cum_;
};

}  // namespace

double RadialSolution::inner(double rho) const { return Primitive(fstar)(kappa * rho * rho); }

RadialSolution solve_radial(const RadialProfile& fstar, double kappa, double R, int n) {
  if (n < 64) throw Error(ErrorKind::Configuration, "radial solver needs n >= 64 nodes");
  if (!(kappa > 0.0) || !(R > 0.0)) throw Error(ErrorKind::Configuration, "kappa and R must be positive");
  for (double v : fstar.values) {
    if (v < 0.0) throw Error(ErrorKind::InvalidData, "f* must be non-negative");
  }
  const Primitive prim(fstar);
  auto sqrt_g = [&](double rho) { return std::sqrt(std::max(0.0, prim(kappa * rho * rho))); };

  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = R * i / (n - 1);
  nodes.back() = R;

  // Simpson panels between consecutive nodes and kinks of G.
  std::vector<double> panels = nodes;
  for (double b : fstar.breakpoints) {
    const double rho = std::sqrt(b / kappa);
    if (rho > 0.0 && rho < R) panels.push_back(rho);
  }
  std::sort(panels.begin(), panels.end());
  panels.erase(std::unique(panels.begin(), panels.end(),
                           [R](double a, double b) { return b - a <= 1e-14 * R; }),
               panels.end());
  panels.back() = R;

  const std::size_t m = panels.size();
  std::vector<double> pw(m, 0.0), pv(m, 0.0);
  const double two_k = 2.0 * kappa;
  auto sqrt_g_sigma = [&](double sigma) {
    return std::sqrt(std::max(0.0, prim(sigma * sigma / (4.0 * kappa))));
  };
  for (std::size_t j = m - 1; j-- > 0;) {
    const double a = panels[j], b = panels[j + 1];
    pw[j] = pw[j + 1] + (b - a) / 6.0 * (sqrt_g(a) + 4.0 * sqrt_g(0.5 * (a + b)) + sqrt_g(b)) /
                            std::sqrt(kappa);
    const double sa = two_k * a, sb = two_k * b;
    pv[j] = pv[j + 1] + (sb - sa) / 6.0 *
                            (sqrt_g_sigma(sa) + 4.0 * sqrt_g_sigma(0.5 * (sa + sb)) +
                             sqrt_g_sigma(sb)) /
                            (2.0 * kappa * std::sqrt(kappa));
  }

  std::vector<double> wv(nodes.size()), wd(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto it = std::lower_bound(panels.begin(), panels.end(), nodes[i] - 1e-14 * R);
    wv[i] = pw[static_cast<std::size_t>(it - panels.begin())];
    wd[i] = -sqrt_g(nodes[i]) / std::sqrt(kappa);
  }

  RadialSolution sol;
  sol.w = RadialProfile::from_table(RadialProfile::Kind::RadialSolution, nodes, wv);
  sol.w.node_derivative = std::move(wd);
  sol.fstar = fstar;
  sol.kappa = kappa;
  sol.R = R;
  sol.panels = std::move(panels);
  sol.panel_w = std::move(pw);
  sol.panel_v = std::move(pv);
  return sol;
}

double v_sharp(const RadialSolution& sol, double s) {
  const double top = 2.0 * sol.kappa * sol.R;
  if (!(s >= 0.0) || s > top * (1.0 + 1e-14)) {
    throw Error(ErrorKind::Domain, "s outside [0, 2 kappa R]");
  }
  const Primitive prim(sol.fstar);
  const double k = sol.kappa;
  auto g = [&](double sigma) { return std::sqrt(std::max(0.0, prim(sigma * sigma / (4.0 * k)))); };
  const auto& pn = sol.panels;
  const double r = std::min(s / (2.0 * k), sol.R);
  auto it = std::upper_bound(pn.begin(), pn.end(), r);
  if (it == pn.end()) return 0.0;
  const auto j = static_cast<std::size_t>(it - pn.begin());
  const double a = s, b = 2.0 * k * pn[j];
  if (b <= a) return sol.panel_v[j];
  const double part = (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
  return sol.panel_v[j] + part / (2.0 * k * std::sqrt(k));
}

double det_residual(const RadialSolution& sol) {
  const auto& r = sol.w.breakpoints;
  const auto& d = sol.w.node_derivative;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double lhs = (d[i + 1] * d[i + 1] - d[i - 1] * d[i - 1]) / (r[i + 1] - r[i - 1]) / (2.0 * r[i]);
    worst = std::max(worst, std::abs(lhs - sol.fstar(sol.kappa * r[i] * r[i])));
  }
  return worst;
}

Report TalentiResult::to_report(double tolerance) const {
  Report rep;
  rep.at_least("min_talenti_margin", worst_margin / max_value, -tolerance);
  return rep;
}

TalentiResult talenti_compare(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                              const TalentiOptions& opt) {
  std::vector<std::pair<double, double>> samples;
  double total = 0.0, nonpositive = 0.0;
  for_each_quadrature_point(field, 0.0, [&](const Vec2& x, double w) {
    const Vec2 g = field.gradient_at(x);
    if (g.norm() <= 1e-10) {
      nonpositive += w;  // flat set: det_H undefined, f taken as 0
      total += w;
      return;
    }
    const double f = operator_terms(norm, g, field.hessian_at(x)).det_h;
    total += w;
    if (!(f > 0.0)) nonpositive += w;
    samples.emplace_back(std::max(0.0, f), w);
  });
  if (nonpositive > opt.nonpositive_fraction * total) {
    throw Error(ErrorKind::ManufacturedSolution,
                "det_H[u] <= 0 on " + std::to_string(100.0 * nonpositive / total) +
                    "% of the domain");
  }

  TalentiResult res;
  const RadialProfile fstar = decreasing_rearrangement(std::move(samples), opt.fstar_nodes);
  const LevelSetProfile prof = profile(field, norm, opt.n_levels);
  const SymmetrizedField star = star_symmetrand(prof, polar);
  const RadialProfile& sharp = star.profile;
  // The slice above the last sampled level is extrapolated, not measured.
  const double s_lo = prof.lambda.back();
  res.max_value = field.max_value();
  res.solution = solve_radial(fstar, star.kappa, star.domain_radius, opt.quadrature_nodes);

  std::vector<double> ss;
  for (double b : sharp.breakpoints)
    if (b >= s_lo) ss.push_back(b);
  for (int k = 0; k <= opt.uniform_samples; ++k) {
    ss.push_back(s_lo + (sharp.s_max - s_lo) * k / opt.uniform_samples);
  }
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());

  res.worst_margin = std::numeric_limits<double>::infinity();
  for (double s : ss) {
    TalentiRow row;
    row.s = s;
    row.u_sharp = sharp(s);
    row.v_sharp = v_sharp(res.solution, std::min(s, 2.0 * star.kappa * star.domain_radius));
    row.margin = row.v_sharp - row.u_sharp;
    if (row.margin < res.worst_margin) {
      res.worst_margin = row.margin;
      res.worst_s = s;
    }
    res.max_abs_gap = std::max(res.max_abs_gap, std::abs(row.margin));
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace anisoperim
