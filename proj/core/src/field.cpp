#include "anisoperim/field.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

#include "anisoperim/error.hpp"
#include "contour.hpp"

namespace anisoperim {
namespace {

// Gradients below this are treated as the flat (maximum) set of u.
constexpr double kFlatGradient = 1e-10;

}  // namespace

GridSpec GridSpec::covering(const ConvexCurve& domain, double spacing, int margin) {
  if (!(spacing > 0.0)) throw Error(ErrorKind::Configuration, "grid spacing must be positive");
  const auto [lo, hi] = domain.bounds();
  GridSpec g;
  g.spacing = spacing;
  const double i0 = std::floor(lo.x() / spacing) - margin;
  const double j0 = std::floor(lo.y() / spacing) - margin;
  g.origin = Vec2(i0 * spacing, j0 * spacing);
  g.nx = static_cast<int>(std::ceil(hi.x() / spacing) + margin - i0) + 1;
  g.ny = static_cast<int>(std::ceil(hi.y() / spacing) + margin - j0) + 1;
  return g;
}

// ---------------------------------------------------------------- ScalarField

ScalarField ScalarField::from_analytic(AnalyticField f, ConvexCurve boundary, double spacing,
                                       Description desc) {
  if (!f.value) throw Error(ErrorKind::Configuration, "analytic field needs a value callback");
  ScalarField out;
  out.grid_ = GridSpec::covering(boundary, spacing);
  out.boundary_ = std::move(boundary);
  out.analytic_ = std::move(f);
  out.desc_ = std::move(desc);
  out.values_.resize(static_cast<std::size_t>(out.grid_.nx) * out.grid_.ny);
  for (int j = 0; j < out.grid_.ny; ++j)
    for (int i = 0; i < out.grid_.nx; ++i)
      out.values_[out.grid_.index(i, j)] = out.analytic_.value(out.grid_.node(i, j));
  out.build_masks();
  return out;
}

ScalarField ScalarField::from_samples(GridSpec grid, std::vector<double> values, std::string name) {
  if (grid.nx < 4 || grid.ny < 4 || !(grid.spacing > 0.0)) {
    throw Error(ErrorKind::Configuration, "grid must be at least 4x4 with positive spacing");
  }
  if (values.size() != static_cast<std::size_t>(grid.nx) * grid.ny) {
    throw Error(ErrorKind::InvalidData, "value count does not match grid");
  }
  ScalarField out;
  out.grid_ = grid;
  out.values_ = std::move(values);
  out.desc_.name = std::move(name);
  auto zero = detail::contour(out.grid_, out.values_, 0.0);
  if (!zero) throw Error(ErrorKind::InvalidData, "field has no positive values");
  out.boundary_ = std::move(*zero);
  std::size_t best = 0;
  for (std::size_t k = 1; k < out.values_.size(); ++k)
    if (out.values_[k] > out.values_[best]) best = k;
  out.desc_.max_value = out.values_[best];
  out.desc_.max_point = out.grid_.node(static_cast<int>(best % grid.nx),
                                       static_cast<int>(best / grid.nx));
  out.build_masks();
  return out;
}

void ScalarField::build_masks() {
  const auto [lo, hi] = boundary_.bounds();
  slack_ = 1e-12 * std::max(1.0, (hi - lo).maxCoeff());
  mask_.assign(values_.size(), 0);
  flat_mask_.assign(values_.size(), 0);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const std::size_t k = grid_.index(i, j);
      mask_[k] = values_[k] > 0.0 ? 1 : 0;
      if (desc_.flat_top && desc_.flat_top->contains(grid_.node(i, j))) flat_mask_[k] = 1;
    }
  }
}

bool ScalarField::contains(const Vec2& x) const { return boundary_.contains(x, slack_); }

template <typename F>
auto ScalarField::interpolate_nodes(const Vec2& x, F&& node_fn) const {
  const Vec2 local = (x - grid_.origin) / grid_.spacing;
  const int i0 = std::clamp(static_cast<int>(std::floor(local.x())), 0, grid_.nx - 2);
  const int j0 = std::clamp(static_cast<int>(std::floor(local.y())), 0, grid_.ny - 2);
  const double fx = local.x() - i0;
  const double fy = local.y() - j0;
  if (fx < -1e-9 || fx > 1.0 + 1e-9 || fy < -1e-9 || fy > 1.0 + 1e-9) {
    throw Error(ErrorKind::Domain, "point outside the sampling grid");
  }
  using T = std::decay_t<decltype(node_fn(i0, j0))>;
  // evaluate here: an Eigen expression would outlive the node temporaries
  const T r = (1 - fx) * (1 - fy) * node_fn(i0, j0) + fx * (1 - fy) * node_fn(i0 + 1, j0) +
              fx * fy * node_fn(i0 + 1, j0 + 1) + (1 - fx) * fy * node_fn(i0, j0 + 1);
  return r;
}

double ScalarField::value_at(const Vec2& x) const {
  if (analytic_.value) return analytic_.value(x);
  return interpolate_nodes(x, [&](int i, int j) { return node_value(i, j); });
}

Vec2 ScalarField::gradient_at(const Vec2& x) const {
  if (!contains(x)) throw Error(ErrorKind::Domain, "point outside the domain");
  if (analytic_.gradient) return analytic_.gradient(x);
  const double h = grid_.spacing;
  auto node_grad = [&](int i, int j) -> Vec2 {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di)
        if (i + di < 0 || j + dj < 0 || i + di >= grid_.nx || j + dj >= grid_.ny ||
            !in_domain(i + di, j + dj))
          throw Error(ErrorKind::Stencil, "difference stencil leaves the domain");
    return Vec2(node_value(i + 1, j) - node_value(i - 1, j),
                node_value(i, j + 1) - node_value(i, j - 1)) /
           (2.0 * h);
  };
  return interpolate_nodes(x, node_grad);
}

Mat2 ScalarField::hessian_at(const Vec2& x) const {
  if (!contains(x)) throw Error(ErrorKind::Domain, "point outside the domain");
  if (analytic_.hessian) return analytic_.hessian(x);
  const double h = grid_.spacing;
  auto node_hess = [&](int i, int j) -> Mat2 {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di)
        if (i + di < 0 || j + dj < 0 || i + di >= grid_.nx || j + dj >= grid_.ny ||
            !in_domain(i + di, j + dj))
          throw Error(ErrorKind::Stencil, "difference stencil leaves the domain");
    const double c = node_value(i, j);
    Mat2 m;
    m(0, 0) = (node_value(i + 1, j) - 2.0 * c + node_value(i - 1, j)) / (h * h);
    m(1, 1) = (node_value(i, j + 1) - 2.0 * c + node_value(i, j - 1)) / (h * h);
    m(0, 1) = m(1, 0) = (node_value(i + 1, j + 1) - node_value(i + 1, j - 1) -
                         node_value(i - 1, j + 1) + node_value(i - 1, j - 1)) /
                        (4.0 * h * h);
    return m;
  };
  return interpolate_nodes(x, node_hess);
}

double ScalarField::max_gradient_norm() const {
  double best = 0.0;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      if (!in_domain(i, j)) continue;
      const Vec2 x = grid_.node(i, j);
      if (!contains(x)) continue;
      try {
        best = std::max(best, gradient_at(x).norm());
      } catch (const Error&) {
        // no stencil this close to the boundary
      }
    }
  }
  if (analytic_.gradient) {
    for (const auto& v : boundary_.vertices()) best = std::max(best, analytic_.gradient(v).norm());
  }
  return best;
}

// ---------------------------------------------------------------- operators

OperatorTerms operator_terms(const Norm& norm, const Vec2& grad, const Mat2& hess) {
  const double gn = grad.norm();
  if (!(gn > 0.0)) throw Error(ErrorKind::SingularGradient, "grad u = 0: operator undefined");
  OperatorTerms t;
  t.grad_norm = gn;
  t.h_grad = norm.value(grad);
  const Mat2 fh = norm.f_hessian(grad);
  const Mat2 a = fh * hess;
  t.det_h = fh.determinant() * hess.determinant();
  const Vec2 f_xi = t.h_grad * norm.gradient(grad);
  t.cofactor_form = f_xi.dot(cofactor(a) * grad);
  t.curvature_contraction = -norm.hessian(grad).cwiseProduct(hess).sum();
  t.curvature_cofactor = -t.cofactor_form / (t.h_grad * t.h_grad * t.h_grad);
  return t;
}

namespace {

OperatorTerms terms_at(const ScalarField& field, const Norm& norm, const Vec2& x) {
  const Vec2 g = field.gradient_at(x);
  if (g.norm() <= kFlatGradient) {
    throw Error(ErrorKind::SingularGradient, "grad u = 0: operator undefined at the flat set");
  }
  return operator_terms(norm, g, field.hessian_at(x));
}

}  // namespace

double det_h_at(const ScalarField& field, const Norm& norm, const Vec2& x) {
  return terms_at(field, norm, x).det_h;
}

double cofactor_form_at(const ScalarField& field, const Norm& norm, const Vec2& x) {
  return terms_at(field, norm, x).cofactor_form;
}

double curvature_at(const ScalarField& field, const Norm& norm, const Vec2& x) {
  const Mat2 hess = field.hessian_at(x);
  const OperatorTerms t = terms_at(field, norm, x);
  const double k1 = t.curvature_contraction;
  const double k2 = t.curvature_cofactor;
  const double scale = hess.norm() / t.grad_norm;
  if (std::abs(k1 - k2) > 1e-4 * std::max(std::abs(k1), std::abs(k2)) + 1e-12 * scale) {
    throw Error(ErrorKind::InternalConsistency,
                "curvature formulas disagree: " + std::to_string(k1) + " vs " + std::to_string(k2));
  }
  return k1;
}

// ---------------------------------------------------------------- quadrature

void for_each_quadrature_point(const ScalarField& field, double level,
                               const std::function<void(const Vec2&, double)>& visit, int sub) {
  const GridSpec& g = field.grid();
  const double h = g.spacing;
  const double hs = h / sub;
  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      const int inside = (field.node_value(i, j) > level) + (field.node_value(i + 1, j) > level) +
                         (field.node_value(i + 1, j + 1) > level) +
                         (field.node_value(i, j + 1) > level);
      if (inside == 0) continue;
      const Vec2 corner = g.node(i, j);
      if (inside == 4) {
        visit(corner + Vec2(0.5 * h, 0.5 * h), h * h);
        continue;
      }
      for (int b = 0; b < sub; ++b) {
        for (int a = 0; a < sub; ++a) {
          const Vec2 x = corner + hs * Vec2(a + 0.5, b + 0.5);
          if (field.value_at(x) > level && (level > 0.0 || field.contains(x))) visit(x, hs * hs);
        }
      }
    }
  }
}

double HessianIntegral::median() const {
  double v[3] = {direct, curvature_form, parts_form};
  std::sort(v, v + 3);
  return v[1];
}

double HessianIntegral::max_pairwise_disagreement() const {
  const double scale = std::max({std::abs(direct), std::abs(curvature_form), std::abs(parts_form)});
  if (scale == 0.0) return 0.0;
  return std::max({std::abs(direct - curvature_form), std::abs(direct - parts_form),
                   std::abs(curvature_form - parts_form)}) /
         scale;
}

HessianIntegral hessian_integral(const ScalarField& field, const Norm& norm) {
  HessianIntegral out;
  for_each_quadrature_point(field, 0.0, [&](const Vec2& x, double w) {
    const Vec2 g = field.gradient_at(x);
    if (g.norm() <= kFlatGradient) return;  // flat set: every integrand vanishes there
    const OperatorTerms t = operator_terms(norm, g, field.hessian_at(x));
    const double h3 = t.h_grad * t.h_grad * t.h_grad;
    out.direct += w * field.value_at(x) * t.det_h;
    out.curvature_form += w * 0.5 * t.curvature_contraction * h3;
    out.parts_form += w * -0.5 * t.cofactor_form;
  });
  return out;
}

ReillyResult reilly_residual(const ScalarField& field, const Norm& norm, double t) {
  const ConvexCurve level = extract_level_set(field, t);
  ReillyResult r;
  for_each_quadrature_point(field, t, [&](const Vec2& x, double w) {
    const Vec2 g = field.gradient_at(x);
    if (g.norm() <= kFlatGradient) return;
    r.lhs += w * operator_terms(norm, g, field.hessian_at(x)).det_h;
  });
  for (std::size_t i = 0; i < level.size(); ++i) {
    const Vec2 mid = level[i] + 0.5 * level.edge(i);
    const OperatorTerms tm = terms_at(field, norm, mid);
    r.rhs += level.edge(i).norm() * 0.5 * tm.curvature_contraction * tm.h_grad * tm.h_grad *
             tm.h_grad / tm.grad_norm;
  }
  r.residual = std::abs(r.lhs - r.rhs) / std::abs(r.lhs);
  const double h = field.grid().spacing;
  r.reliable = area(level) >= 10.0 * h * h;
  return r;
}

double level_set_gauss_bonnet(const ScalarField& field, const Norm& norm, double t) {
  const ConvexCurve level = extract_level_set(field, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < level.size(); ++i) {
    const Vec2 mid = level[i] + 0.5 * level.edge(i);
    const Vec2 g = field.gradient_at(mid);
    const OperatorTerms tm = operator_terms(norm, g, field.hessian_at(mid));
    sum += level.edge(i).norm() * tm.curvature_contraction * norm.value(-g / tm.grad_norm);
  }
  return sum;
}

// ---------------------------------------------------------------- examples

namespace {

struct NearestFeature {
  Vec2 point;
  bool at_vertex = false;
  double distance = 0.0;
};

NearestFeature nearest_feature(const ConvexCurve& c, const Vec2& x) {
  NearestFeature best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 a = c[i];
    const Vec2 e = c.edge(i);
    const double s = std::clamp((x - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
    const Vec2 q = a + s * e;
    const double d = (x - q).norm();
    if (d < best.distance) best = {q, s <= 0.0 || s >= 1.0, d};
  }
  return best;
}

}  // namespace

ScalarField distance_field_example(const ConvexCurve& omega0, double delta, double spacing,
                                   int disk_resolution) {
  if (!(delta > 0.0)) throw Error(ErrorKind::Configuration, "delta must be positive");
  const ConvexCurve disk =
      wulff_curve(PolarNorm::analytic(Norm::euclidean()), delta, disk_resolution);
  ConvexCurve omega = minkowski_sum(omega0, disk);
  const double d3 = delta * delta * delta;
  AnalyticField f;
  f.value = [omega0, d3](const Vec2& x) {
    const double d = omega0.distance(x);
    return d3 - d * d * d;
  };
  f.gradient = [omega0](const Vec2& x) -> Vec2 {
    if (omega0.contains(x)) return Vec2::Zero();
    const NearestFeature nf = nearest_feature(omega0, x);
    return -3.0 * nf.distance * (x - nf.point);
  };
  f.hessian = [omega0](const Vec2& x) -> Mat2 {
    if (omega0.contains(x)) return Mat2::Zero();
    const NearestFeature nf = nearest_feature(omega0, x);
    const double d = nf.distance;
    const Vec2 n = (x - nf.point) / d;
    const Mat2 nn = n * n.transpose();
    // Hessian of d vanishes along edges and is (I - n n^T)/d in vertex wedges.
    Mat2 hd = Mat2::Zero();
    if (nf.at_vertex) hd = (Mat2::Identity() - nn) / d;
    return -(6.0 * d * nn + 3.0 * d * d * hd);
  };
  ScalarField::Description desc;
  desc.name = "distance-cube";
  desc.max_value = d3;
  desc.max_point = omega0.centroid();
  desc.flat_top = omega0;
  return ScalarField::from_analytic(std::move(f), std::move(omega), spacing, std::move(desc));
}

double concavity_violation(const ScalarField& field, int samples, unsigned seed) {
  const GridSpec& g = field.grid();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> di(0, g.nx - 1);
  std::uniform_int_distribution<int> dj(0, g.ny - 1);
  double worst = -std::numeric_limits<double>::infinity();
  int done = 0;
  for (int attempt = 0; done < samples && attempt < 100 * samples; ++attempt) {
    const int i1 = di(rng), j1 = dj(rng), i2 = di(rng), j2 = dj(rng);
    if ((i1 - i2) % 2 != 0 || (j1 - j2) % 2 != 0) continue;
    const int im = (i1 + i2) / 2, jm = (j1 + j2) / 2;
    if (!field.in_domain(i1, j1) || !field.in_domain(i2, j2) || !field.in_domain(im, jm)) continue;
    const double v =
        0.5 * (field.node_value(i1, j1) + field.node_value(i2, j2)) - field.node_value(im, jm);
    worst = std::max(worst, v);
    ++done;
  }
  return worst;
}

}  // namespace anisoperim
