#pragma once

#include <optional>
#include <vector>

#include "anisoperim/convex_curve.hpp"
#include "anisoperim/field.hpp"

namespace anisoperim::detail {

/// Marching squares on raw node values. Returns the convex hull of the
/// largest closed loop of {v = t}, nullopt when no node exceeds t.
std::optional<ConvexCurve> contour(const GridSpec& grid, const std::vector<double>& values,
                                   double t);

}  // namespace anisoperim::detail
