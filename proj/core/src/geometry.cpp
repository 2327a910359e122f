#include "metapeel/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace metapeel {

namespace {

constexpr double kCoincidenceTol = 1e-9; // mm

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b - a).cross(c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

} // namespace

bool segments_properly_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

double shoelace_area(const std::vector<Vec2>& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % n];
    twice += p.cross(q);
  }
  return 0.5 * twice;
}

std::vector<Vec2> CutShape::polyline() const {
  std::vector<Vec2> pts;
  pts.reserve(internal_points.size() + 2);
  pts.push_back(endpoints[0]);
  pts.insert(pts.end(), internal_points.begin(), internal_points.end());
  pts.push_back(endpoints[1]);
  return pts;
}

std::vector<Vec2> CutShape::closed_polygon() const { return polyline(); }

CutShape CutShape::translated(Vec2 offset) const {
  CutShape out = *this;
  out.endpoints[0] = endpoints[0] + offset;
  out.endpoints[1] = endpoints[1] + offset;
  for (auto& p : out.internal_points) p = p + offset;
  return out;
}

namespace {

// A polyline is simple when no two segments properly cross.
bool has_crossing(const std::vector<Vec2>& pts, std::size_t* si = nullptr, std::size_t* sj = nullptr) {
  const std::size_t m = pts.size() - 1; // segment count
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (segments_properly_cross(pts[i], pts[i + 1], pts[j], pts[j + 1])) {
        if (si) *si = i;
        if (sj) *sj = j;
        return true;
      }
    }
  }
  return false;
}

} // namespace

CutShape repair_ordering(const std::vector<Vec2>& points,
                         const std::array<Vec2, 2>& endpoints,
                         const UnitCell& cell,
                         RepairStats* stats) {
  if (points.size() < 3 || points.size() > 7)
    throw PreconditionViolation("repair_ordering: point count must be in [3,7]");
  for (const Vec2& p : points)
    if (!cell.contains(p, 1e-9))
      throw PreconditionViolation("repair_ordering: point outside unit cell");

  std::vector<Vec2> all(points);
  all.push_back(endpoints[0]);
  all.push_back(endpoints[1]);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if ((all[i] - all[j]).norm() < kCoincidenceTol)
        throw DegenerateInput("repair_ordering: coincident points");

  // Clockwise angular sort about the centroid of the internal point set,
  // sweeping from the first endpoint's bearing. Ties break by radius.
  Vec2 centroid{0.0, 0.0};
  for (const Vec2& p : points) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(points.size()));

  const double start = std::atan2(endpoints[0].y - centroid.y, endpoints[0].x - centroid.x);
  auto sweep_key = [&](Vec2 p) {
    const double a = std::atan2(p.y - centroid.y, p.x - centroid.x);
    double k = start - a; // clockwise from the first endpoint
    const double two_pi = 2.0 * 3.14159265358979323846;
    while (k < 0.0) k += two_pi;
    while (k >= two_pi) k -= two_pi;
    return k;
  };

  std::vector<Vec2> ordered(points);
  std::stable_sort(ordered.begin(), ordered.end(), [&](Vec2 a, Vec2 b) {
    const double ka = sweep_key(a), kb = sweep_key(b);
    if (ka != kb) return ka < kb;
    return (a - centroid).norm() < (b - centroid).norm();
  });

  std::vector<Vec2> pts;
  pts.reserve(ordered.size() + 2);
  pts.push_back(endpoints[0]);
  pts.insert(pts.end(), ordered.begin(), ordered.end());
  pts.push_back(endpoints[1]);

  // 2-opt uncrossing: reverse the sub-path between the first crossing pair
  // (lexicographic scan, restart after every swap). Reversing a proper
  // crossing strictly shortens the polyline, so this terminates.
  int swaps = 0, passes = 0;
  const int swap_limit = 10000;
  std::size_t si = 0, sj = 0;
  while (has_crossing(pts, &si, &sj)) {
    ++passes;
    std::reverse(pts.begin() + static_cast<std::ptrdiff_t>(si) + 1,
                 pts.begin() + static_cast<std::ptrdiff_t>(sj) + 1);
    ++swaps;
    if (swaps > swap_limit)
      throw DegenerateInput("repair_ordering: 2-opt failed to terminate");
  }

  if (stats) {
    stats->swaps = swaps;
    stats->passes = passes;
  }

  CutShape shape;
  shape.endpoints = endpoints;
  shape.internal_points.assign(pts.begin() + 1, pts.end() - 1);
  shape.cell = cell;
  return shape;
}

ShapeMetrics compute_metrics(const CutShape& shape) {
  const std::vector<Vec2> poly = shape.closed_polygon();
  const std::size_t n = poly.size();

  ShapeMetrics m;
  m.enclosed_area = std::abs(shoelace_area(poly));

  m.bbox_min = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  m.bbox_max = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2& p : poly) {
    m.bbox_min.x = std::min(m.bbox_min.x, p.x);
    m.bbox_min.y = std::min(m.bbox_min.y, p.y);
    m.bbox_max.x = std::max(m.bbox_max.x, p.x);
    m.bbox_max.y = std::max(m.bbox_max.y, p.y);
  }

  // Segments of the closed polygon, including the endpoint-to-endpoint
  // closure. Segment k runs poly[k] -> poly[(k+1) % n].
  double longest = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    longest = std::max(longest, (poly[(k + 1) % n] - poly[k]).norm());

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == v || (k + 1) % n == v) continue; // vertex belongs to segment
      min_gap = std::min(min_gap, point_segment_distance(poly[v], poly[k], poly[(k + 1) % n]));
    }
  }
  m.min_feature = std::isfinite(min_gap) ? min_gap : 0.0;

  const double ratio = min_gap > 0.0 ? longest / min_gap : 1e6;
  m.max_aspect_ratio = std::clamp(ratio, 1.0, 1e6);
  return m;
}

Vec2 PatternLayout::extent() const {
  return {rows * shape.cell.width, cols * shape.cell.height};
}

std::vector<std::vector<Vec2>> PatternLayout::cut_polylines() const {
  std::vector<std::vector<Vec2>> out;
  out.reserve(offsets.size());
  for (const Vec2& off : offsets) {
    std::vector<Vec2> pts = shape.polyline();
    for (Vec2& p : pts) p = p + off;
    out.push_back(std::move(pts));
  }
  return out;
}

PatternLayout tile_pattern(const CutShape& shape, int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw PreconditionViolation("tile_pattern: rows and cols must be >= 1");
  PatternLayout layout;
  layout.shape = shape;
  layout.rows = rows;
  layout.cols = cols;
  layout.offsets.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      layout.offsets.push_back({i * shape.cell.width, j * shape.cell.height});
  return layout;
}

} // namespace metapeel
