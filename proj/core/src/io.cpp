#include "anisoperim/io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "anisoperim/error.hpp"

namespace anisoperim {
namespace pt = boost::property_tree;

Norm NormSpec::make() const {
  if (kind == "euclidean") return Norm::euclidean();
  if (kind == "ellipse") return Norm::ellipse(a, b);
  if (kind == "pnorm") return Norm::pnorm(p);
  throw Error(ErrorKind::Configuration, "unknown norm kind '" + kind + "'");
}

NormSpec NormSpec::of(const Norm& norm) {
  NormSpec s;
  switch (norm.kind()) {
    case Norm::Kind::Euclidean:
      s.kind = "euclidean";
      break;
    case Norm::Kind::Ellipse:
      s.kind = "ellipse";
      s.a = norm.a();
      s.b = norm.b();
      break;
    case Norm::Kind::PNorm:
      s.kind = "pnorm";
      s.p = norm.p();
      break;
    case Norm::Kind::Custom:
      throw Error(ErrorKind::Configuration, "custom norms cannot be serialized");
  }
  return s;
}

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

double parse_double(std::string_view tok, const std::string& where) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) {
    tok.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::Parse, where + ": not a number '" + std::string(tok) + "'");
  }
  return v;
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".ini");
}

}  // namespace

ConvexCurve read_curve(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<Vec2> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string xs, ys, extra;
    if (!(ls >> xs)) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (!(ls >> ys) || (ls >> extra)) throw Error(ErrorKind::Parse, where + ": expected 'x y'");
    pts.emplace_back(parse_double(xs, where), parse_double(ys, where));
  }
  return ConvexCurve::from_vertices(std::move(pts));
}

void write_curve(const std::filesystem::path& path, const ConvexCurve& curve) {
  auto out = open_out(path);
  for (const auto& v : curve.vertices()) out << format_double(v.x()) << ' ' << format_double(v.y()) << '\n';
}

void write_field(const std::filesystem::path& path, const ScalarField& field, const Norm& norm) {
  const GridSpec& g = field.grid();
  {
    auto out = open_out(path);
    out << "x,y,u\n";
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const Vec2 x = g.node(i, j);
        out << format_double(x.x()) << ',' << format_double(x.y()) << ','
            << format_double(field.node_value(i, j)) << '\n';
      }
    }
  }
  const NormSpec ns = NormSpec::of(norm);
  pt::ptree tree;
  tree.put("grid.origin_x", format_double(g.origin.x()));
  tree.put("grid.origin_y", format_double(g.origin.y()));
  tree.put("grid.spacing", format_double(g.spacing));
  tree.put("grid.nx", g.nx);
  tree.put("grid.ny", g.ny);
  tree.put("norm.kind", ns.kind);
  tree.put("norm.a", format_double(ns.a));
  tree.put("norm.b", format_double(ns.b));
  tree.put("norm.p", format_double(ns.p));
  tree.put("field.name", field.name());
  try {
    pt::write_ini(sidecar(path).string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Io, e.what());
  }
}

LoadedField read_field(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(sidecar(path).string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  GridSpec g;
  NormSpec ns;
  std::string name;
  try {
    g.origin = Vec2(tree.get<double>("grid.origin_x"), tree.get<double>("grid.origin_y"));
    g.spacing = tree.get<double>("grid.spacing");
    g.nx = tree.get<int>("grid.nx");
    g.ny = tree.get<int>("grid.ny");
    ns.kind = tree.get<std::string>("norm.kind", "euclidean");
    ns.a = tree.get<double>("norm.a", 1.0);
    ns.b = tree.get<double>("norm.b", 1.0);
    ns.p = tree.get<double>("norm.p", 2.0);
    name = tree.get<std::string>("field.name", "samples");
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorKind::Parse, sidecar(path).string() + ": " + e.what());
  }
  if (g.nx < 4 || g.ny < 4 || !(g.spacing > 0.0)) {
    throw Error(ErrorKind::InvalidData, "descriptor grid must be at least 4x4 with positive spacing");
  }

  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,u", 0) != 0) {
    throw Error(ErrorKind::Parse, path.string() + ": missing header x,y,u");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw Error(ErrorKind::Parse, where + ": expected x,y,u");
    const std::string_view sv(line);
    const Vec2 x(parse_double(sv.substr(0, c1), where), parse_double(sv.substr(c1 + 1, c2 - c1 - 1), where));
    const auto k = values.size();
    if (k >= static_cast<std::size_t>(g.nx) * g.ny) throw Error(ErrorKind::InvalidData, where + ": too many rows");
    const Vec2 node = g.node(static_cast<int>(k % g.nx), static_cast<int>(k / g.nx));
    if ((x - node).norm() > 1e-6 * g.spacing) {
      throw Error(ErrorKind::InvalidData, where + ": row does not match the grid descriptor");
    }
    values.push_back(parse_double(sv.substr(c2 + 1), where));
  }
  if (values.size() != static_cast<std::size_t>(g.nx) * g.ny) {
    throw Error(ErrorKind::InvalidData, path.string() + ": expected " + std::to_string(g.nx * g.ny) +
                                            " rows, found " + std::to_string(values.size()));
  }
  ns.make();  // validates the norm parameters
  return {ScalarField::from_samples(g, std::move(values), name), ns};
}

void write_profile_csv(std::ostream& os, const LevelSetProfile& p) {
  os << "t,mu,lambda,lambda_prime,mu_prime\n";
  for (std::size_t k = 0; k < p.levels.size(); ++k) {
    os << format_double(p.levels[k]) << ',' << format_double(p.mu[k]) << ','
       << format_double(p.lambda[k]) << ',' << format_double(p.lambda_prime[k]) << ','
       << format_double(p.mu_prime[k]) << '\n';
  }
}

void write_radial_profile_csv(std::ostream& os, const RadialProfile& p) {
  os << "s,value,derivative\n";
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    const double d = !p.node_derivative.empty() ? p.node_derivative[i]
                     : i == 0                    ? 0.0
                                                 : p.slopes[i - 1];
    os << format_double(p.breakpoints[i]) << ',' << format_double(p.values[i]) << ','
       << format_double(d) << '\n';
  }
}

void write_talenti_csv(std::ostream& os, const TalentiResult& r) {
  os << "s,u_sharp,v_sharp,margin\n";
  for (const auto& row : r.rows) {
    os << format_double(row.s) << ',' << format_double(row.u_sharp) << ','
       << format_double(row.v_sharp) << ',' << format_double(row.margin) << '\n';
  }
}

}  // namespace anisoperim
