#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "anisoperim/error.hpp"
#include "anisoperim/field.hpp"
#include "contour.hpp"

namespace anisoperim {
namespace detail {
namespace {

// Edge ids: horizontal edge (i,j)-(i+1,j) -> 2k, vertical (i,j)-(i,j+1) -> 2k+1.
struct Marcher {
  const GridSpec& g;
  const std::vector<double>& v;
  double t;

  std::int64_t hid(int i, int j) const { return 2 * static_cast<std::int64_t>(g.index(i, j)); }
  std::int64_t vid(int i, int j) const { return hid(i, j) + 1; }

  Vec2 point(std::int64_t id) const {
    const auto k = static_cast<std::size_t>(id / 2);
    const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
    const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
    const int i2 = (id % 2 == 0) ? i + 1 : i;
    const int j2 = (id % 2 == 0) ? j : j + 1;
    const double a = v[g.index(i, j)];
    const double b = v[g.index(i2, j2)];
    const double s = std::clamp((t - a) / (b - a), 0.0, 1.0);
    return (1.0 - s) * g.node(i, j) + s * g.node(i2, j2);
  }
};

}  // namespace

std::optional<ConvexCurve> contour(const GridSpec& g, const std::vector<double>& v, double t) {
  auto above = [&](int i, int j) { return v[g.index(i, j)] > t; };
  bool any = false;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!above(i, j)) continue;
      any = true;
      if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) {
        throw Error(ErrorKind::Extraction, "level set touches the grid border");
      }
    }
  }
  if (!any) return std::nullopt;

  Marcher m{g, v, t};
  std::unordered_map<std::int64_t, std::array<std::int64_t, 2>> adj;
  std::unordered_map<std::int64_t, int> degree;
  auto link = [&](std::int64_t a, std::int64_t b) {
    for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
      int& d = degree[p];
      if (d >= 2) throw Error(ErrorKind::Extraction, "contour edge shared by more than two segments");
      adj[p][d++] = q;
    }
  };

  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      const int c = above(i, j) | above(i + 1, j) << 1 | above(i + 1, j + 1) << 2 |
                    above(i, j + 1) << 3;
      if (c == 0 || c == 15) continue;
      const std::int64_t B = m.hid(i, j), T = m.hid(i, j + 1);
      const std::int64_t L = m.vid(i, j), R = m.vid(i + 1, j);
      const double centre = 0.25 * (v[g.index(i, j)] + v[g.index(i + 1, j)] +
                                    v[g.index(i + 1, j + 1)] + v[g.index(i, j + 1)]);
      switch (c) {
        case 1: case 14: link(L, B); break;
        case 2: case 13: link(B, R); break;
        case 3: case 12: link(L, R); break;
        case 4: case 11: link(R, T); break;
        case 6: case 9: link(B, T); break;
        case 7: case 8: link(L, T); break;
        case 5:
          if (centre > t) { link(B, R); link(T, L); } else { link(L, B); link(R, T); }
          break;
        case 10:
          if (centre > t) { link(L, B); link(R, T); } else { link(B, R); link(T, L); }
          break;
        default: break;
      }
    }
  }

  std::unordered_map<std::int64_t, bool> seen;
  std::vector<Vec2> best;
  double best_area = -1.0;
  for (const auto& [start, d] : degree) {
    if (d != 2) throw Error(ErrorKind::Extraction, "contour is not closed");
    if (seen[start]) continue;
    std::vector<Vec2> loop;
    std::int64_t prev = -1, cur = start;
    do {
      seen[cur] = true;
      loop.push_back(m.point(cur));
      const auto& nb = adj[cur];
      const std::int64_t next = (nb[0] != prev) ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    } while (cur != start);
    double a = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) a += cross(loop[k], loop[(k + 1) % loop.size()]);
    if (std::abs(a) > best_area) {
      best_area = std::abs(a);
      best = std::move(loop);
    }
  }
  if (best.size() < 3) return std::nullopt;
  try {
    return ConvexCurve::hull(best);
  } catch (const Error&) {
    return std::nullopt;  // degenerate sliver
  }
}

}  // namespace detail

ConvexCurve extract_level_set(const ScalarField& field, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidInput, "level must be non-negative");
  if (t == 0.0) return field.boundary();
  if (t >= field.max_value()) throw Error(ErrorKind::EmptyLevel, "level at or above max u");
  auto c = detail::contour(field.grid(), field.values(), t);
  if (!c) throw Error(ErrorKind::EmptyLevel, "no grid node above level " + std::to_string(t));
  return std::move(*c);
}

std::vector<double> distribution(const ScalarField& field, const std::vector<double>& levels) {
  const double top = field.flat_top() ? area(*field.flat_top()) : 0.0;
  std::vector<double> mu;
  mu.reserve(levels.size());
  for (double t : levels) {
    if (t >= field.max_value()) {
      mu.push_back(top);
      continue;
    }
    try {
      mu.push_back(area(extract_level_set(field, t)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyLevel) throw;
      mu.push_back(top);
    }
  }
  return mu;
}

namespace {

// Contour quadrature of 1/|grad u| and k_H/|grad u| along {u = t}.
struct ContourSums {
  double inv_grad = 0.0;    // int 1/|grad u|           -> -mu'(t)
  double lambda_rate = 0.0; // int k_H/|grad u|          -> -lambda'(t)
};

ContourSums contour_sums(const ScalarField& field, const Norm& norm, const ConvexCurve& c) {
  ContourSums s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 e = c.edge(i);
    const Vec2 mid = c[i] + 0.5 * e;
    const Vec2 g = field.gradient_at(mid);
    const OperatorTerms tm = operator_terms(norm, g, field.hessian_at(mid));
    const double len = e.norm();
    s.inv_grad += len / tm.grad_norm;
    s.lambda_rate += len * tm.curvature_contraction / tm.grad_norm;
  }
  return s;
}

}  // namespace

LevelSetProfile profile(const ScalarField& field, const Norm& norm, int n_levels) {
  if (n_levels < 8) throw Error(ErrorKind::Configuration, "need at least 8 levels");
  LevelSetProfile p;
  p.max_value = field.max_value();
  if (field.flat_top()) {
    p.top_area = area(*field.flat_top());
    p.top_perimeter = perimeter_h(*field.flat_top(), norm);
  }
  const auto n = static_cast<std::size_t>(n_levels);
  p.levels.resize(n);
  p.mu.resize(n);
  p.lambda.resize(n);
  p.lambda_prime.resize(n);
  p.mu_prime.resize(n);
  p.from_quadrature.assign(n, true);

  for (std::size_t k = 0; k < n; ++k) {
    const double t = p.max_value * static_cast<double>(k) / n_levels;
    p.levels[k] = t;
    const ConvexCurve c = extract_level_set(field, t);
    p.mu[k] = area(c);
    p.lambda[k] = perimeter_h(c, norm);
    try {
      const ContourSums s = contour_sums(field, norm, c);
      p.mu_prime[k] = -s.inv_grad;
      p.lambda_prime[k] = -s.lambda_rate;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Stencil && e.kind() != ErrorKind::Domain) throw;
      p.from_quadrature[k] = false;
    }
  }

  for (std::size_t k = 1; k < n; ++k) {
    if (!(p.mu[k] < p.mu[k - 1]) || !(p.lambda[k] < p.lambda[k - 1])) {
      throw Error(ErrorKind::Profile, "mu or lambda not strictly decreasing at level " +
                                          std::to_string(p.levels[k]));
    }
  }

  auto table_diff = [&](const std::vector<double>& y, std::size_t k) {
    if (k == 0) return (y[1] - y[0]) / (p.levels[1] - p.levels[0]);
    if (k + 1 == n) return (y[k] - y[k - 1]) / (p.levels[k] - p.levels[k - 1]);
    return (y[k + 1] - y[k - 1]) / (p.levels[k + 1] - p.levels[k - 1]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (p.from_quadrature[k]) continue;
    p.mu_prime[k] = table_diff(p.mu, k);
    p.lambda_prime[k] = table_diff(p.lambda, k);
  }

  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (p.levels[k] > 0.75 * p.max_value) break;
    if (!p.from_quadrature[k]) continue;
    const double fd = table_diff(p.lambda, k);
    const double rel = std::abs(fd - p.lambda_prime[k]) / std::abs(p.lambda_prime[k]);
    p.lambda_prime_fd_mismatch = std::max(p.lambda_prime_fd_mismatch, rel);
  }
  return p;
}

}  // namespace anisoperim
