#pragma once

#include <array>
#include <vector>

namespace metapeel {

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Coefficient of variation: sample standard deviation / mean.
double coefficient_of_variation(const std::vector<double>& values);

/// 2D hypervolume dominated by a maximization front relative to a
/// reference point below-left of every point.
double hypervolume_2d(std::vector<std::array<double, 2>> points, std::array<double, 2> reference);

} // namespace metapeel
