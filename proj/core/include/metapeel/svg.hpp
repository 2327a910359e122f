#pragma once

#include <string>
#include <string_view>

#include "metapeel/geometry.hpp"

namespace metapeel {

/// Render a cut pattern as a vector drawing for the laser-cut workflow.
/// Millimeter user units, one stroke-only polyline per cut, 3 decimal
/// places. The only supported tag is "svg".
///
/// Throws UnsupportedFormat for unknown tags and PreconditionViolation
/// for an empty pattern.
std::string export_cut_paths(const PatternLayout& pattern, std::string_view format = "svg");

} // namespace metapeel
