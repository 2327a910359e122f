#pragma once

#include <Eigen/Core>
#include <vector>

#include "metapeel/cohesive.hpp"
#include "metapeel/geometry.hpp"
#include "metapeel/material.hpp"

namespace metapeel {

struct StretchLink {
  int a = -1;
  int b = -1;
  double rest_length = 0.0; // m
  double stiffness = 0.0;   // N/m
  bool severed = false;
};

/// Three collinear nodes forming a bending hinge; straight rest state.
struct BendingHinge {
  int a = -1;
  int b = -1;
  int c = -1;
  double stiffness = 0.0; // N*m, small-angle bending stiffness
  bool severed = false;
};

/// Discretized elastic sheet bonded to a rigid substrate: a regular node
/// grid with stretch links (grid edges plus cross braces), bending hinges
/// along rows and columns, and one cohesive bond per node. Links crossing
/// the cut polyline are severed and carry zero stiffness. All mechanics
/// quantities are SI; the source geometry is millimeters.
struct Mesh {
  int nx = 0;
  int ny = 0;
  double hx = 0.0; // m, node spacing along x
  double hy = 0.0; // m, node spacing along y
  std::vector<Eigen::Vector3d> reference; // z = 0 plane
  std::vector<StretchLink> links;
  std::vector<BendingHinge> hinges;
  std::vector<CohesiveBond> bonds; // one per node
  std::vector<int> cut_links;      // indices of severed links
  std::vector<Vec2> severing_polyline; // mm; the nudged polyline actually tested
  CohesiveLaw law;
  MaterialParams material;

  int node_index(int i, int j) const { return j * nx + i; }
  int node_count() const { return nx * ny; }

  double total_area() const;  // sum of tributary areas [m^2]
  double bonded_area() const; // tributary area of bonds with damage < 1

  std::vector<int> bottom_edge_nodes() const; // y = 0 row
  std::vector<int> top_edge_nodes() const;    // y = height row
};

/// Regular grid over the cell with no cut.
Mesh build_mesh(const UnitCell& cell, double resolution_per_mm, const MaterialParams& mat);

/// Grid over the shape's cell with links crossing the cut severed. The cut
/// polyline is nudged by ~1e-4 of a spacing before the crossing tests so
/// cuts aligned with grid lines sever cleanly instead of collinearly
/// touching; the nudged polyline is recorded in `severing_polyline`.
///
/// Throws ResolutionTooCoarse when the narrowest feature of the shape is
/// smaller than one node spacing, and PreconditionViolation for
/// resolution < 1 element/mm.
Mesh build_mesh(const CutShape& shape, double resolution_per_mm, const MaterialParams& mat);

} // namespace metapeel
