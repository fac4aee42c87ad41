#include "svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "anisoperim/error.hpp"

namespace anisoperim::cli {
namespace {

constexpr double kW = 640, kH = 480, kPad = 48;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  void add(double x, double y) {
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  double px(double x) const { return kPad + (x - x0) / std::max(x1 - x0, 1e-300) * (kW - 2 * kPad); }
  double py(double y) const { return kH - kPad - (y - y0) / std::max(y1 - y0, 1e-300) * (kH - 2 * kPad); }
};

std::ofstream open_svg(const std::filesystem::path& path, const std::string& title) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">"
     << title << "</text>\n";
  return os;
}

}  // namespace

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::vector<Series>& series) {
  Box box;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) box.add(s.x[i], s.y[i]);
  auto os = open_svg(path, title);
  os << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad
     << "\" height=\"" << kH - 2 * kPad << "\" fill=\"none\" stroke=\"#888\"/>\n";
  int k = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      os << format_double(box.px(s.x[i])) << ',' << format_double(box.py(s.y[i])) << ' ';
    }
    os << "\"/>\n<text x=\"" << kW - kPad - 4 << "\" y=\"" << kPad + 16 + 16 * k
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << s.color
       << "\">" << s.label << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
}

void write_curve_overlay(const std::filesystem::path& path, const std::string& title,
                         const std::vector<std::pair<std::string, ConvexCurve>>& curves) {
  Box box;
  for (const auto& [label, c] : curves)
    for (const auto& v : c.vertices()) box.add(v.x(), v.y());
  // equal aspect
  const double span = std::max(box.x1 - box.x0, box.y1 - box.y0);
  const double cx = 0.5 * (box.x0 + box.x1), cy = 0.5 * (box.y0 + box.y1);
  box.x0 = cx - 0.5 * span * kW / kH, box.x1 = cx + 0.5 * span * kW / kH;
  box.y0 = cy - 0.5 * span, box.y1 = cy + 0.5 * span;
  auto os = open_svg(path, title);
  std::size_t k = 0;
  for (const auto& [label, c] : curves) {
    const char* color = kColors[k % 4];
    os << "<polygon fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& v : c.vertices()) {
      os << format_double(box.px(v.x())) << ',' << format_double(box.py(v.y())) << ' ';
    }
    os << "\"/>\n<text x=\"" << kPad << "\" y=\"" << kPad + 16 * k
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << label
       << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
}

}  // namespace anisoperim::cli
