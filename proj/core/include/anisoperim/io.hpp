#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "anisoperim/convex_curve.hpp"
#include "anisoperim/field.hpp"
#include "anisoperim/norm.hpp"
#include "anisoperim/radial.hpp"
#include "anisoperim/rearrange.hpp"

namespace anisoperim {

/// Built-in norm by kind name ("euclidean", "ellipse", "pnorm") and parameters.
struct NormSpec {
  std::string kind = "euclidean";
  double a = 1.0;
  double b = 1.0;
  double p = 2.0;

  Norm make() const;
  static NormSpec of(const Norm& norm);
};

/// "x y" per line; blank lines and '#' comments ignored.
ConvexCurve read_curve(const std::filesystem::path& path);
void write_curve(const std::filesystem::path& path, const ConvexCurve& curve);

/// Node values as CSV "x,y,u" plus a descriptor at path + ".ini".
void write_field(const std::filesystem::path& path, const ScalarField& field, const Norm& norm);

struct LoadedField {
  ScalarField field;
  NormSpec norm;
};

LoadedField read_field(const std::filesystem::path& path);

void write_profile_csv(std::ostream& os, const LevelSetProfile& profile);
/// Columns s,value,derivative; derivative is the exact node derivative when
/// present, else the backward interval slope.
void write_radial_profile_csv(std::ostream& os, const RadialProfile& profile);
void write_talenti_csv(std::ostream& os, const TalentiResult& result);

}  // namespace anisoperim
