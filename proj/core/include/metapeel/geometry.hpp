#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "metapeel/errors.hpp"

namespace metapeel {

/// 2D point/vector in millimeters (cell coordinates).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

/// Rectangular unit cell hosting one cut shape. Cells tile into grids
/// for physical patterns.
struct UnitCell {
  double width = 10.0;  // mm
  double height = 15.0; // mm

  bool contains(Vec2 p, double tol = 1e-12) const {
    return p.x >= -tol && p.x <= width + tol && p.y >= -tol && p.y <= height + tol;
  }
};

/// Open polyline cut inside a unit cell. The two endpoints are fixed per
/// study configuration; the internal points are the design variables.
/// After repair the polyline endpoint[0] -> internal_points -> endpoint[1]
/// has no self-intersections.
struct CutShape {
  std::array<Vec2, 2> endpoints;
  std::vector<Vec2> internal_points; // ordered
  UnitCell cell;

  /// Full open polyline: endpoint[0], internal points, endpoint[1].
  std::vector<Vec2> polyline() const;

  /// Polyline closed by the endpoint-to-endpoint segment.
  std::vector<Vec2> closed_polygon() const;

  CutShape translated(Vec2 offset) const;
};

struct ShapeMetrics {
  double enclosed_area = 0.0;     // mm^2, shoelace of the closed polygon
  double max_aspect_ratio = 1.0;  // clamped to [1, 1e6]
  double min_feature = 0.0;       // mm, smallest vertex-to-nonadjacent-segment gap
  Vec2 bbox_min;
  Vec2 bbox_max;
};

/// Optional instrumentation for repair_ordering.
struct RepairStats {
  int swaps = 0;
  int passes = 0;
};

/// True when the open segments (a,b) and (c,d) properly cross, i.e. their
/// interiors intersect transversally. Shared endpoints and collinear
/// touches do not count.
bool segments_properly_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Distance from point p to the closed segment (a,b).
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Signed shoelace area of a closed polygon (positive when counterclockwise).
double shoelace_area(const std::vector<Vec2>& polygon);

/// Order an unordered point set into a simple open polyline between the
/// fixed endpoints: clockwise angular sort about the point-set centroid
/// (ties broken by radial distance), then 2-opt segment swaps until no two
/// segments cross. Each swap strictly shortens the polyline, so the repair
/// terminates.
///
/// Throws DegenerateInput when two points coincide within 1e-9 mm, and
/// PreconditionViolation when the point count is outside [3,7] or a point
/// lies outside the cell.
CutShape repair_ordering(const std::vector<Vec2>& points,
                         const std::array<Vec2, 2>& endpoints,
                         const UnitCell& cell = {},
                         RepairStats* stats = nullptr);

/// Area, aspect ratio and feature size of a repaired shape. The aspect
/// ratio is (longest segment) / (min vertex-to-nonadjacent-segment
/// distance), clamped to [1, 1e6]; degenerate distances clamp rather than
/// throw.
ShapeMetrics compute_metrics(const CutShape& shape);

/// Grid of translated copies of one cut shape. Offsets use the cell pitch,
/// rows along x and cols along y, so the overall extent is
/// (rows * cell.width, cols * cell.height).
struct PatternLayout {
  CutShape shape;
  int rows = 1;
  int cols = 1;
  std::vector<Vec2> offsets;

  Vec2 extent() const;
  std::vector<std::vector<Vec2>> cut_polylines() const;
  std::size_t size() const { return offsets.size(); }
};

PatternLayout tile_pattern(const CutShape& shape, int rows, int cols);

} // namespace metapeel
