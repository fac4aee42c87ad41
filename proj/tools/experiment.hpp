#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "anisoperim/io.hpp"

namespace anisoperim::cli {

struct DomainSpec {
  std::string kind = "wulff";  // wulff | polygon | preset
  double radius = 1.0;
  std::string path;
  std::string preset;  // square | hexagon | pentagon | rectangle
};

struct FieldSpec {
  // wulff-power | linear-image | softmin | distance-cube | csv | manufactured
  std::string family = "wulff-power";
  double q = 2.0;
  Vec2 center = Vec2::Zero();
  double sx = 1.0, sy = 1.0, angle = 0.0, gauge_p = 2.0;
  double sharpness = 8.0;
  double a = 0.5, b = 0.3, delta = 0.3;
  std::string path;
  std::string name;  // for family = manufactured
};

struct Resolution {
  double spacing = 1.0 / 256.0;
  int n_levels = 64;
  int curve_n = 8192;
  int quadrature_n = 1024;
};

struct ExperimentConfig {
  NormSpec norm;
  bool numeric_polar = false;
  DomainSpec domain;
  FieldSpec field;
  Resolution resolution;
  std::vector<std::string> suites;
  std::filesystem::path output = "anisoperim-out";
  bool svg = true;
  bool expect_equality = false;
};

const std::vector<std::string>& suite_names();

/// Parses key = value text with [sections]. Throws Error(Parse|Configuration).
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct Preset {
  std::string name;
  std::string description;
  std::string text;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

struct SuiteResult {
  std::string suite;
  Report report;
};

/// Runs every selected suite and writes <suite>.csv, summary.csv, tables/
/// and (optionally) svg/ under config.output. Returns 0 iff all checks pass.
int run(const ExperimentConfig& config, bool parallel, std::ostream& log);

}  // namespace anisoperim::cli
