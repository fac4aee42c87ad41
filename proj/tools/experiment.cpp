#include "experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "anisoperim/error.hpp"
#include "anisoperim/manufactured.hpp"
#include "svg.hpp"

namespace anisoperim::cli {
namespace pt = boost::property_tree;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "identities", "geometry", "curvature", "hessian-integrals", "symmetrize", "polya-szego",
      "compare"};
  return names;
}

// ---------------------------------------------------------------- config

namespace {

using Keys = std::map<std::string, std::set<std::string>>;

const Keys& known_keys() {
  static const Keys k = {
      {"norm", {"kind", "a", "b", "p", "polar"}},
      {"domain", {"kind", "radius", "path", "preset"}},
      {"field",
       {"family", "q", "center_x", "center_y", "sx", "sy", "angle", "gauge_p", "sharpness", "a",
        "b", "delta", "path", "name"}},
      {"resolution", {"spacing", "n_levels", "curve_n", "quadrature_n"}},
      {"run", {"suites", "output", "svg", "expect_equality"}},
  };
  return k;
}

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback, const std::string& origin) {
  if (!tree.get_child_optional(key)) return fallback;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_error&) {
    throw Error(ErrorKind::Parse, origin + ": bad value for " + key);
  }
}

void require_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Configuration, what);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  {
    // read_ini drops sections without keys
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      line.erase(0, line.find_first_not_of(" \t"));
      if (line.empty() || line[0] != '[') continue;
      const std::string name = line.substr(1, line.find(']') - 1);
      if (!known_keys().count(name)) throw Error(ErrorKind::Parse, origin + ": unknown section [" + name + "]");
    }
  }
  pt::ptree tree;
  try {
    std::istringstream body(text);
    pt::read_ini(body, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Parse, origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw Error(ErrorKind::Parse, origin + ": unknown section [" + section + "]");
    if (body.empty()) throw Error(ErrorKind::Parse, origin + ": key '" + section + "' outside a section");
    for (const auto& kv : body) {
      if (!it->second.count(kv.first)) {
        throw Error(ErrorKind::Parse, origin + ": unknown key '" + kv.first + "' in [" + section + "]");
      }
    }
  }

  ExperimentConfig c;
  c.norm.kind = get<std::string>(tree, "norm.kind", "euclidean", origin);
  c.norm.a = get(tree, "norm.a", 1.0, origin);
  c.norm.b = get(tree, "norm.b", 1.0, origin);
  c.norm.p = get(tree, "norm.p", 2.0, origin);
  const auto polar = get<std::string>(tree, "norm.polar", "analytic", origin);
  require_range(polar == "analytic" || polar == "numeric", "norm.polar must be analytic or numeric");
  c.numeric_polar = polar == "numeric";
  c.norm.make();  // rejects p < 2 and bad axes here, at parse time

  c.domain.kind = get<std::string>(tree, "domain.kind", "wulff", origin);
  c.domain.radius = get(tree, "domain.radius", 1.0, origin);
  c.domain.path = get<std::string>(tree, "domain.path", "", origin);
  c.domain.preset = get<std::string>(tree, "domain.preset", "", origin);
  require_range(c.domain.kind == "wulff" || c.domain.kind == "polygon" || c.domain.kind == "preset",
                "domain.kind must be wulff, polygon or preset");
  require_range(c.domain.radius > 0.0, "domain.radius must be positive");

  auto& f = c.field;
  f.family = get<std::string>(tree, "field.family", "wulff-power", origin);
  f.q = get(tree, "field.q", 2.0, origin);
  f.center = Vec2(get(tree, "field.center_x", 0.0, origin), get(tree, "field.center_y", 0.0, origin));
  f.sx = get(tree, "field.sx", 1.0, origin);
  f.sy = get(tree, "field.sy", 1.0, origin);
  f.angle = get(tree, "field.angle", 0.0, origin);
  f.gauge_p = get(tree, "field.gauge_p", 2.0, origin);
  f.sharpness = get(tree, "field.sharpness", 8.0, origin);
  f.a = get(tree, "field.a", 0.5, origin);
  f.b = get(tree, "field.b", 0.3, origin);
  f.delta = get(tree, "field.delta", 0.3, origin);
  f.path = get<std::string>(tree, "field.path", "", origin);
  f.name = get<std::string>(tree, "field.name", "", origin);
  static const std::set<std::string> families = {"wulff-power", "linear-image", "softmin",
                                                 "distance-cube", "csv", "manufactured"};
  require_range(families.count(f.family) > 0, "unknown field.family '" + f.family + "'");
  require_range(f.q >= 1.0, "field.q must be >= 1");
  require_range(f.gauge_p >= 2.0, "field.gauge_p must be >= 2");
  require_range(f.sx > 0.0 && f.sy > 0.0, "field.sx and field.sy must be positive");

  auto& r = c.resolution;
  r.spacing = get(tree, "resolution.spacing", r.spacing, origin);
  r.n_levels = get(tree, "resolution.n_levels", r.n_levels, origin);
  r.curve_n = get(tree, "resolution.curve_n", r.curve_n, origin);
  r.quadrature_n = get(tree, "resolution.quadrature_n", r.quadrature_n, origin);
  require_range(r.spacing >= 1.0 / 4096 && r.spacing <= 1.0 / 16, "resolution.spacing must lie in [1/4096, 1/16]");
  require_range(r.n_levels >= 8 && r.n_levels <= 1024, "resolution.n_levels must lie in [8, 1024]");
  require_range(r.curve_n >= 64 && r.curve_n <= 65536, "resolution.curve_n must lie in [64, 65536]");
  require_range(r.quadrature_n >= 64 && r.quadrature_n <= 65536,
                "resolution.quadrature_n must lie in [64, 65536]");

  const auto suites = get<std::string>(tree, "run.suites", "all", origin);
  if (suites == "all") {
    c.suites = suite_names();
  } else {
    for (const auto& s : split_list(suites)) {
      if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
        throw Error(ErrorKind::Parse, origin + ": unknown suite '" + s + "'");
      }
      if (std::find(c.suites.begin(), c.suites.end(), s) == c.suites.end()) c.suites.push_back(s);
    }
  }
  require_range(!c.suites.empty(), "run.suites selects nothing");
  c.output = get<std::string>(tree, "run.output", c.output.string(), origin);
  c.svg = get(tree, "run.svg", true, origin);
  c.expect_equality = get(tree, "run.expect_equality", false, origin);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read config " + path.string());
  ExperimentConfig c = parse_config(in, path.string());
  const auto base = path.parent_path();
  if (!c.domain.path.empty() && std::filesystem::path(c.domain.path).is_relative()) {
    c.domain.path = (base / c.domain.path).string();
  }
  if (!c.field.path.empty() && std::filesystem::path(c.field.path).is_relative()) {
    c.field.path = (base / c.field.path).string();
  }
  return c;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"euclidean-disk-quadratic", "1 - |x|^2 on the unit disk, every suite",
       "[norm]\nkind = euclidean\n[field]\nfamily = wulff-power\nq = 2\n[run]\nsuites = all\n"},
      {"distance-cube-ellipse",
       "delta^3 - dist(x, E)^3 around an ellipse E: equality without radial symmetry",
       "[norm]\nkind = euclidean\n[field]\nfamily = distance-cube\na = 0.5\nb = 0.3\ndelta = 0.3\n"
       "[run]\nsuites = identities, geometry, curvature, hessian-integrals, symmetrize, polya-szego\n"
       "expect_equality = true\n"},
      {"ellipse-wulff-quadratic", "1 - H°(x)^2 on the Wulff shape of the (2, 1) ellipse norm",
       "[norm]\nkind = ellipse\na = 2\nb = 1\n[field]\nfamily = wulff-power\nq = 2\n"
       "[run]\nsuites = all\nexpect_equality = true\n"},
      {"pnorm-superellipse", "rotated superellipse quadratic under the 4-norm",
       "[norm]\nkind = pnorm\np = 4\n[field]\nfamily = linear-image\nsx = 0.8\nsy = 0.6\n"
       "angle = 20\ngauge_p = 4\n[run]\nsuites = all\n"},
      {"pentagon-softmin", "smoothed pentagon distance under the (2, 1) ellipse norm",
       "[norm]\nkind = ellipse\na = 2\nb = 1\n[domain]\nkind = preset\npreset = pentagon\n"
       "[field]\nfamily = softmin\nsharpness = 10\n[run]\nsuites = all\n"},
      {"thin-ellipse", "quadratic on a 4:1 ellipse, Euclidean",
       "[norm]\nkind = euclidean\n[field]\nfamily = linear-image\nsx = 1\nsy = 0.25\n"
       "[run]\nsuites = all\n"},
  };
  return list;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

// ---------------------------------------------------------------- suites

namespace {

Mat2 image_transform(double sx, double sy, double degrees) {
  const double t = -degrees * kPi / 180.0;
  Mat2 rot;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return Eigen::Vector2d(1.0 / sx, 1.0 / sy).asDiagonal() * rot;
}

ConvexCurve preset_polygon(const std::string& name) {
  auto regular = [](int n, double phase) {
    std::vector<Vec2> v;
    for (int k = 0; k < n; ++k) v.push_back(unit_direction(phase + 2.0 * kPi * k / n));
    return ConvexCurve::from_vertices(v);
  };
  if (name == "square") return ConvexCurve::from_vertices({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  if (name == "hexagon") return regular(6, 0.0);
  if (name == "pentagon") return regular(5, 0.3);
  if (name == "rectangle") return ConvexCurve::from_vertices({{-0.9, -0.5}, {0.9, -0.5}, {0.9, 0.5}, {-0.9, 0.5}});
  throw Error(ErrorKind::Configuration, "unknown domain preset '" + name + "'");
}

struct Context {
  const ExperimentConfig& config;
  Norm norm;
  PolarNorm polar;
  double kappa;
  ScalarField field;
  std::filesystem::path tables;
  std::filesystem::path svg;
};

ScalarField build_field(const ExperimentConfig& c, const Norm& norm, const PolarNorm& polar) {
  const FieldSpec& f = c.field;
  const double h = c.resolution.spacing;
  if (f.family == "wulff-power") {
    return wulff_power_field(polar, c.domain.radius, f.center, f.q, h, c.resolution.curve_n);
  }
  if (f.family == "linear-image") {
    const Norm gauge = f.gauge_p == 2.0 ? Norm::euclidean() : Norm::pnorm(f.gauge_p);
    return linear_image_field(gauge, image_transform(f.sx, f.sy, f.angle), f.center, h,
                              "linear-image", c.resolution.curve_n);
  }
  if (f.family == "softmin") {
    const ConvexCurve poly = c.domain.kind == "polygon" ? read_curve(c.domain.path)
                             : c.domain.kind == "preset" ? preset_polygon(c.domain.preset)
                                                         : preset_polygon("pentagon");
    return softmin_polygon_field(poly, f.sharpness, h, "softmin");
  }
  if (f.family == "distance-cube") return distance_field_ellipse(f.a, f.b, f.delta, h);
  if (f.family == "csv") return read_field(f.path).field;
  for (auto& r : manufactured_suite(norm, polar)) {
    if (r.name == f.name) return r.build(h);
  }
  throw Error(ErrorKind::Configuration, "unknown manufactured field '" + f.name + "'");
}

Report identities_suite(const Context& ctx) {
  Report rep;
  auto add = [&](const std::string& prefix, const IdentityResiduals& r, double tol) {
    rep.at_most(prefix + "euler_h", r.euler_h, tol);
    rep.at_most(prefix + "euler_polar", r.euler_polar, tol);
    rep.at_most(prefix + "unit_gauge", r.unit_gauge, tol);
    rep.at_most(prefix + "inverse_map", r.inverse_map, tol);
  };
  const PolarNorm analytic = PolarNorm::analytic(ctx.norm);
  const PolarNorm numeric = PolarNorm::numeric(ctx.norm);
  add("analytic_", identity_residuals(ctx.norm, analytic, 100), 1e-10);
  add("numeric_", identity_residuals(ctx.norm, numeric, 100), 1e-5);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi), scale(-5.0, 5.0), len(0.1, 10.0);
  double homog = 0.0, modes = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec2 xi = len(rng) * unit_direction(ang(rng));
    const double t = scale(rng);
    const double h = ctx.norm(xi);
    homog = std::max(homog, std::abs(ctx.norm(t * xi) - std::abs(t) * h) / (std::abs(t) * h));
    const double pa = analytic(xi);
    modes = std::max(modes, std::abs(numeric(xi) - pa) / pa);
  }
  rep.at_most("homogeneity_rel", homog, 1e-10);
  rep.at_most("polar_modes_rel", modes, 1e-6);
  return rep;
}

Report geometry_suite(const Context& ctx) {
  Report rep;
  const int n = ctx.config.resolution.curve_n;
  for (double R : {0.5, 1.0, 2.0}) {
    const ConvexCurve w = wulff_curve(ctx.polar, R, n);
    rep.at_most("wulff_perimeter_rel_R" + format_double(R),
                std::abs(perimeter_h(w, ctx.norm) - 2.0 * ctx.kappa * R) / (2.0 * ctx.kappa * R), 1e-4);
  }
  const ConvexCurve& k = ctx.field.boundary();
  for (double d : {0.05, 0.1, 0.25}) {
    const auto s = steiner_gauss_bonnet_check(k, ctx.norm, ctx.polar, d, ctx.kappa, n);
    rep.append(s.to_report(1e-4), "delta" + format_double(d) + "_");
  }
  const double p = perimeter_h(k, ctx.norm);
  rep.at_least("min_isoperimetric_deficit_rel", isoperimetric_deficit(k, ctx.norm, ctx.kappa) / (p * p), -1e-9);
  const ConvexCurve w = wulff_curve(ctx.polar, 1.0, n);
  const double pw = perimeter_h(w, ctx.norm);
  rep.at_most("wulff_isoperimetric_deficit_rel", isoperimetric_deficit(w, ctx.norm, ctx.kappa) / (pw * pw), 1e-3);
  return rep;
}

Report curvature_suite(const Context& ctx) {
  Report rep;
  const ScalarField& f = ctx.field;
  const auto [lo, hi] = f.boundary().bounds();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
  const bool wulff = ctx.config.field.family == "wulff-power";
  double formulas = 0.0, radius = 0.0;
  int found = 0;
  for (int tries = 0; found < 100 && tries < 100000; ++tries) {
    const Vec2 x(ux(rng), uy(rng));
    if (!f.contains(x) || f.value_at(x) < 0.05 * f.max_value() || f.value_at(x) > 0.95 * f.max_value()) continue;
    const Vec2 g = f.gradient_at(x);
    if (g.norm() < 1e-8) continue;
    const OperatorTerms t = operator_terms(ctx.norm, g, f.hessian_at(x));
    const double k1 = t.curvature_contraction, k2 = t.curvature_cofactor;
    formulas = std::max(formulas, std::abs(k1 - k2) / std::max(std::abs(k1), std::abs(k2)));
    if (wulff) {
      const double r = ctx.polar(x - ctx.config.field.center);
      radius = std::max(radius, std::abs(k1 * r - 1.0));
    }
    ++found;
  }
  if (found < 100) rep.failure("curvature_samples", "fewer than 100 interior sample points");
  rep.at_most("curvature_formulas_rel", formulas, 1e-6);
  if (wulff) rep.at_most("wulff_curvature_rel", radius, 1e-4);
  for (double frac : {0.25, 0.5}) {
    const double gb = level_set_gauss_bonnet(f, ctx.norm, frac * f.max_value());
    rep.at_most("gauss_bonnet_rel_t" + format_double(frac), std::abs(gb - 2.0 * ctx.kappa) / (2.0 * ctx.kappa), 1e-3);
  }
  return rep;
}

Report hessian_suite(const Context& ctx) {
  Report rep;
  const ScalarField& f = ctx.field;
  const HessianIntegral hi = hessian_integral(f, ctx.norm);
  rep.at_most("triple_disagreement", hi.max_pairwise_disagreement(), 0.02);
  const FieldSpec& fs = ctx.config.field;
  if (fs.family == "wulff-power") {
    const double q = fs.q, R = ctx.config.domain.radius;
    const double oracle = ctx.kappa * q * q * q / ((3.0 * q - 2.0) * R * R);
    rep.at_most("radial_oracle_rel", std::abs(hi.median() - oracle) / oracle, 0.01);
  }
  for (double frac : {0.1, 0.5}) {
    const ReillyResult r = reilly_residual(f, ctx.norm, frac * f.max_value());
    rep.at_most("reilly_rel_t" + format_double(frac), r.residual, 0.01);
  }
  return rep;
}

void write_table(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + path.string());
  body(os);
}

Report symmetrize_suite(const Context& ctx) {
  const ScalarField& f = ctx.field;
  const int n = ctx.config.resolution.n_levels;
  Report rep = rearrangement_checks(f, ctx.norm, ctx.polar, n);

  const LevelSetProfile prof = profile(f, ctx.norm, n);
  const SymmetrizedField star = star_symmetrand(prof, ctx.polar);
  const SymmetrizedField conv = convex_symmetrand(f, ctx.polar, n);
  const double h = f.grid().spacing;
  double cells = 0.0;
  for (std::size_t k = 0; k < prof.levels.size(); ++k) {
    const double t = prof.levels[k];
    const double a_conv = area(conv.superlevel_set(t, ctx.config.resolution.curve_n));
    double a_star = conv.profile.s_max;  // |{u* > t}| by bisection on the profile
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + a_star);
      (conv.profile(mid) > t ? lo : a_star) = mid;
    }
    cells = std::max({cells, std::abs(a_conv - prof.mu[k]) / (h * h),
                      std::abs(a_star - prof.mu[k]) / (h * h)});
  }
  rep.at_most("equimeasurability_cells", cells, 1.0);
  for (double p : {1.0, 2.0}) {
    const double a = field_lp_norm(f, p), b = conv.lp_norm(p);
    rep.at_most("convex_lp_rel_p" + format_double(p), std::abs(a - b) / a, 0.01);
  }

  write_table(ctx.tables / "profile.csv", [&](std::ostream& os) { write_profile_csv(os, prof); });
  write_table(ctx.tables / "u_sharp.csv", [&](std::ostream& os) { write_radial_profile_csv(os, star.profile); });
  write_table(ctx.tables / "u_star.csv", [&](std::ostream& os) { write_radial_profile_csv(os, conv.profile); });
  if (ctx.config.svg) {
    write_line_plot(ctx.svg / "lambda.svg", "anisotropic perimeter of level sets",
                    {{"lambda_H(t)", prof.levels, prof.lambda}});
    write_curve_overlay(ctx.svg / "domains.svg", "domain and its star symmetrand",
                        {{"Omega", f.boundary()},
                         {"Omega star", wulff_curve(ctx.polar, star.domain_radius, 512)}});
  }
  return rep;
}

Report polya_szego_suite(const Context& ctx) {
  Report rep;
  const PolyaSzego ps = polya_szego_report(ctx.field, ctx.norm, ctx.polar, ctx.config.resolution.n_levels);
  rep.at_least("min_polya_szego_margin", ps.margin, -0.02);
  if (ctx.config.expect_equality) rep.at_most("equality_gap", std::abs(ps.margin), 0.02);
  return rep;
}

Report compare_suite(const Context& ctx) {
  TalentiOptions opt;
  opt.n_levels = ctx.config.resolution.n_levels;
  opt.quadrature_nodes = ctx.config.resolution.quadrature_n;
  const TalentiResult t = talenti_compare(ctx.field, ctx.norm, ctx.polar, opt);
  Report rep = t.to_report(0.01);
  if (ctx.config.expect_equality) rep.at_most("radial_gap", t.max_abs_gap / t.max_value, 0.01);
  write_table(ctx.tables / "talenti.csv", [&](std::ostream& os) { write_talenti_csv(os, t); });
  write_table(ctx.tables / "w.csv", [&](std::ostream& os) { write_radial_profile_csv(os, t.solution.w); });
  if (ctx.config.svg) {
    Series u{"u sharp", {}, {}, "#1f77b4"}, v{"v sharp", {}, {}, "#d62728"};
    for (const auto& row : t.rows) {
      u.x.push_back(row.s), u.y.push_back(row.u_sharp);
      v.x.push_back(row.s), v.y.push_back(row.v_sharp);
    }
    write_line_plot(ctx.svg / "talenti.svg", "comparison of u sharp and v sharp", {u, v});
  }
  return rep;
}

Report run_suite(const std::string& name, const Context& ctx) {
  try {
    if (name == "identities") return identities_suite(ctx);
    if (name == "geometry") return geometry_suite(ctx);
    if (name == "curvature") return curvature_suite(ctx);
    if (name == "hessian-integrals") return hessian_suite(ctx);
    if (name == "symmetrize") return symmetrize_suite(ctx);
    if (name == "polya-szego") return polya_szego_suite(ctx);
    if (name == "compare") return compare_suite(ctx);
  } catch (const Error& e) {
    Report rep;
    rep.failure("error", e.what());
    return rep;
  }
  throw Error(ErrorKind::Configuration, "unknown suite " + name);
}

}  // namespace

int run(const ExperimentConfig& config, bool parallel, std::ostream& log) {
  namespace fs = std::filesystem;
  const Norm norm = config.norm.make();
  const PolarNorm polar = config.numeric_polar ? PolarNorm::numeric(norm) : PolarNorm::analytic(norm);
  Context ctx{config, norm, polar, kappa_of(polar, config.resolution.curve_n),
              build_field(config, norm, polar), config.output / "tables", config.output / "svg"};
  fs::create_directories(ctx.tables);
  if (config.svg) fs::create_directories(ctx.svg);

  std::vector<SuiteResult> results;
  if (parallel) {
    std::vector<std::future<Report>> jobs;
    for (const auto& s : config.suites) {
      jobs.push_back(std::async(std::launch::async, [&ctx, s] { return run_suite(s, ctx); }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) results.push_back({config.suites[i], jobs[i].get()});
  } else {
    for (const auto& s : config.suites) results.push_back({s, run_suite(s, ctx)});
  }

  std::ofstream summary(config.output / "summary.csv");
  if (!summary) throw Error(ErrorKind::Io, "cannot write summary.csv");
  summary << "suite,check,value,tolerance,pass\n";
  bool ok = true;
  for (const auto& r : results) {
    std::ofstream os(config.output / (r.suite + ".csv"));
    if (!os) throw Error(ErrorKind::Io, "cannot write " + r.suite + ".csv");
    r.report.write_csv(os);
    std::size_t failed = 0;
    for (const auto& row : r.report.rows()) {
      summary << r.suite << ',' << row.name << ',' << format_double(row.value) << ','
              << format_double(row.tolerance) << ',' << (row.pass ? "true" : "false") << '\n';
      if (!row.pass) ++failed;
    }
    ok = ok && failed == 0;
    log << r.suite << ": " << r.report.size() - failed << '/' << r.report.size() << " checks pass\n";
  }
  return ok ? 0 : 1;
}

}  // namespace anisoperim::cli
