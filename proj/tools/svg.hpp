#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anisoperim/convex_curve.hpp"

namespace anisoperim::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::vector<Series>& series);
void write_curve_overlay(const std::filesystem::path& path, const std::string& title,
                         const std::vector<std::pair<std::string, ConvexCurve>>& curves);

}  // namespace anisoperim::cli
