#include "metapeel/mesh.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace metapeel {

namespace {

constexpr double kMmToM = 1e-3;

Mesh build_grid(const UnitCell& cell, double resolution_per_mm, const MaterialParams& mat) {
  if (!(resolution_per_mm >= 1.0))
    throw PreconditionViolation("build_mesh: resolution must be >= 1 element/mm");
  mat.validate();

  Mesh mesh;
  mesh.material = mat;
  mesh.nx = static_cast<int>(std::lround(cell.width * resolution_per_mm)) + 1;
  mesh.ny = static_cast<int>(std::lround(cell.height * resolution_per_mm)) + 1;
  if (mesh.nx < 2 || mesh.ny < 2)
    throw PreconditionViolation("build_mesh: cell too small for the grid");
  mesh.hx = cell.width * kMmToM / (mesh.nx - 1);
  mesh.hy = cell.height * kMmToM / (mesh.ny - 1);

  const double h_char = 0.5 * (mesh.hx + mesh.hy);
  mesh.law = CohesiveLaw(mat, h_char);

  mesh.reference.reserve(static_cast<std::size_t>(mesh.nx) * mesh.ny);
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i)
      mesh.reference.emplace_back(i * mesh.hx, j * mesh.hy, 0.0);

  auto trib_x = [&](int i) { return (i == 0 || i == mesh.nx - 1) ? 0.5 * mesh.hx : mesh.hx; };
  auto trib_y = [&](int j) { return (j == 0 || j == mesh.ny - 1) ? 0.5 * mesh.hy : mesh.hy; };

  mesh.bonds.reserve(mesh.reference.size());
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i) {
      CohesiveBond bond;
      bond.node = mesh.node_index(i, j);
      bond.area = trib_x(i) * trib_y(j);
      mesh.bonds.push_back(bond);
    }

  // Axial stiffness of a strip: E*t * width / length.
  const double et = mat.membrane_stiffness();
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i + 1 < mesh.nx; ++i)
      mesh.links.push_back({mesh.node_index(i, j), mesh.node_index(i + 1, j), mesh.hx,
                            et * trib_y(j) / mesh.hx, false});
  for (int j = 0; j + 1 < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i)
      mesh.links.push_back({mesh.node_index(i, j), mesh.node_index(i, j + 1), mesh.hy,
                            et * trib_x(i) / mesh.hy, false});
  const double ld = std::hypot(mesh.hx, mesh.hy);
  const double kd = et * h_char / (2.0 * ld); // cross braces carry shear
  for (int j = 0; j + 1 < mesh.ny; ++j)
    for (int i = 0; i + 1 < mesh.nx; ++i) {
      mesh.links.push_back({mesh.node_index(i, j), mesh.node_index(i + 1, j + 1), ld, kd, false});
      mesh.links.push_back({mesh.node_index(i + 1, j), mesh.node_index(i, j + 1), ld, kd, false});
    }

  // Plate-strip bending: hinge stiffness D * width / spacing.
  const double rigidity = mat.bending_rigidity();
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 1; i + 1 < mesh.nx; ++i)
      mesh.hinges.push_back({mesh.node_index(i - 1, j), mesh.node_index(i, j),
                             mesh.node_index(i + 1, j), rigidity * trib_y(j) / mesh.hx, false});
  for (int j = 1; j + 1 < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i)
      mesh.hinges.push_back({mesh.node_index(i, j - 1), mesh.node_index(i, j),
                             mesh.node_index(i, j + 1), rigidity * trib_x(i) / mesh.hy, false});

  return mesh;
}

} // namespace

double Mesh::total_area() const {
  double a = 0.0;
  for (const CohesiveBond& b : bonds) a += b.area;
  return a;
}

double Mesh::bonded_area() const {
  double a = 0.0;
  for (const CohesiveBond& b : bonds)
    if (!b.failed()) a += b.area;
  return a;
}

std::vector<int> Mesh::bottom_edge_nodes() const {
  std::vector<int> out;
  out.reserve(nx);
  for (int i = 0; i < nx; ++i) out.push_back(node_index(i, 0));
  return out;
}

std::vector<int> Mesh::top_edge_nodes() const {
  std::vector<int> out;
  out.reserve(nx);
  for (int i = 0; i < nx; ++i) out.push_back(node_index(i, ny - 1));
  return out;
}

Mesh build_mesh(const UnitCell& cell, double resolution_per_mm, const MaterialParams& mat) {
  return build_grid(cell, resolution_per_mm, mat);
}

Mesh build_mesh(const CutShape& shape, double resolution_per_mm, const MaterialParams& mat) {
  Mesh mesh = build_grid(shape.cell, resolution_per_mm, mat);

  const double hx_mm = mesh.hx / kMmToM;
  const double hy_mm = mesh.hy / kMmToM;
  const ShapeMetrics metrics = compute_metrics(shape);
  if (metrics.min_feature < std::max(hx_mm, hy_mm))
    throw ResolutionTooCoarse("build_mesh: fewer than two nodes span the narrowest tab feature");

  // Nudge the polyline off the grid lines so axis-aligned cuts cross links
  // transversally instead of collinearly.
  const Vec2 nudge{1.1e-4 * hx_mm, 0.7e-4 * hy_mm};
  mesh.severing_polyline = shape.polyline();
  for (Vec2& p : mesh.severing_polyline) p = p + nudge;

  for (std::size_t li = 0; li < mesh.links.size(); ++li) {
    StretchLink& link = mesh.links[li];
    const Eigen::Vector3d& pa = mesh.reference[link.a];
    const Eigen::Vector3d& pb = mesh.reference[link.b];
    const Vec2 a{pa.x() / kMmToM, pa.y() / kMmToM};
    const Vec2 b{pb.x() / kMmToM, pb.y() / kMmToM};
    for (std::size_t s = 0; s + 1 < mesh.severing_polyline.size(); ++s) {
      if (segments_properly_cross(a, b, mesh.severing_polyline[s],
                                  mesh.severing_polyline[s + 1])) {
        link.severed = true;
        mesh.cut_links.push_back(static_cast<int>(li));
        break;
      }
    }
  }

  // A hinge dies with either of its two grid links.
  std::map<std::pair<int, int>, bool> severed_pairs;
  for (const StretchLink& link : mesh.links)
    severed_pairs[{std::min(link.a, link.b), std::max(link.a, link.b)}] = link.severed;
  for (BendingHinge& hinge : mesh.hinges) {
    const bool left = severed_pairs[{std::min(hinge.a, hinge.b), std::max(hinge.a, hinge.b)}];
    const bool right = severed_pairs[{std::min(hinge.b, hinge.c), std::max(hinge.b, hinge.c)}];
    hinge.severed = left || right;
  }

  return mesh;
}

} // namespace metapeel
