#include "metapeel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metapeel/errors.hpp"

namespace metapeel {

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

} // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InsufficientData("spearman: needs two equally sized samples of >= 2");
  return pearson(average_ranks(x), average_ranks(y));
}

double coefficient_of_variation(const std::vector<double>& values) {
  if (values.size() < 2) throw InsufficientData("coefficient_of_variation: needs >= 2 values");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  if (mean == 0.0) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (values.size() - 1));
  return sd / std::abs(mean);
}

double hypervolume_2d(std::vector<std::array<double, 2>> points, std::array<double, 2> reference) {
  if (points.empty()) return 0.0;
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a[0] != b[0]) return a[0] > b[0];
    return a[1] > b[1];
  });
  double hv = 0.0;
  double prev_y = reference[1];
  for (const auto& p : points) {
    if (p[0] <= reference[0]) continue;
    if (p[1] > prev_y) {
      hv += (p[0] - reference[0]) * (p[1] - prev_y);
      prev_y = p[1];
    }
  }
  return hv;
}

} // namespace metapeel
