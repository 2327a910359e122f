#include "metapeel/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "metapeel/errors.hpp"

namespace metapeel {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

// Spring Hessian block, transverse term clamped to keep it PSD under
// compression; line search on the true energy covers the difference.
Matrix3d spring_block(const Vector3d& unit, double stiffness, double rest_over_len) {
  const Matrix3d uu = unit * unit.transpose();
  const double beta = std::max(0.0, 1.0 - rest_over_len);
  return stiffness * (uu + beta * (Matrix3d::Identity() - uu));
}

} // namespace

EquilibriumSolver::EquilibriumSolver(Mesh mesh, std::vector<int> gripped_nodes,
                                     SolverParams params)
    : mesh_(std::move(mesh)), params_(params), gripped_(std::move(gripped_nodes)) {
  const int n = mesh_.node_count();
  is_gripped_.assign(n, 0);
  for (int g : gripped_) is_gripped_[g] = 1;

  dof_base_.assign(n, -1);
  n_dof_ = 0;
  for (int i = 0; i < n; ++i) {
    if (!is_gripped_[i]) {
      dof_base_[i] = n_dof_;
      n_dof_ += 3;
    }
  }

  positions_ = mesh_.reference;
  tol_force_ = params_.tolerance_scale * mesh_.material.tensile_strength * mesh_.hx * mesh_.hy;

  // The gripped strip is held by the machine, not by the adhesive under
  // test; releasing its bonds up front keeps the first increment smooth.
  for (CohesiveBond& bond : mesh_.bonds)
    if (is_gripped_[bond.node]) bond.damage = 1.0;
  initial_bonded_area_ = mesh_.bonded_area();

  build_pattern();
}

void EquilibriumSolver::build_pattern() {
  std::vector<Eigen::Triplet<double>> trips;
  auto add_block = [&](int dof_r, int dof_c) {
    if (dof_r < 0 || dof_c < 0) return;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) trips.emplace_back(dof_r + r, dof_c + c, 0.0);
  };

  for (const StretchLink& link : mesh_.links) {
    if (link.severed) continue;
    const int da = dof_base_[link.a], db = dof_base_[link.b];
    add_block(da, da);
    add_block(db, db);
    add_block(da, db);
    add_block(db, da);
  }
  for (const BendingHinge& hinge : mesh_.hinges) {
    if (hinge.severed) continue;
    const int d[3] = {dof_base_[hinge.a], dof_base_[hinge.b], dof_base_[hinge.c]};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) add_block(d[x], d[y]);
  }
  for (const CohesiveBond& bond : mesh_.bonds) {
    const int dn = dof_base_[bond.node];
    if (dn >= 0)
      for (int r = 0; r < 3; ++r) trips.emplace_back(dn + r, dn + r, 0.0);
  }

  hessian_.resize(n_dof_, n_dof_);
  hessian_.setFromTriplets(trips.begin(), trips.end());
  hessian_.makeCompressed();

  // Value-slot lookup so repeated assemblies scatter without searching.
  auto find_slot = [&](int row, int col) -> int {
    const int* outer = hessian_.outerIndexPtr();
    const int* inner = hessian_.innerIndexPtr();
    int lo = outer[col], hi = outer[col + 1];
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (inner[mid] < row)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  };
  auto block_slots = [&](int dof_r, int dof_c, int* out) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        out[r * 3 + c] = (dof_r < 0 || dof_c < 0) ? -1 : find_slot(dof_r + r, dof_c + c);
  };

  link_scatter_.clear();
  for (std::size_t i = 0; i < mesh_.links.size(); ++i) {
    const StretchLink& link = mesh_.links[i];
    if (link.severed) continue;
    LinkScatter sc;
    sc.link = static_cast<int>(i);
    sc.dof_a = dof_base_[link.a];
    sc.dof_b = dof_base_[link.b];
    block_slots(sc.dof_a, sc.dof_a, sc.slots.data() + 0);
    block_slots(sc.dof_b, sc.dof_b, sc.slots.data() + 9);
    block_slots(sc.dof_a, sc.dof_b, sc.slots.data() + 18);
    block_slots(sc.dof_b, sc.dof_a, sc.slots.data() + 27);
    link_scatter_.push_back(sc);
  }
  hinge_scatter_.clear();
  for (std::size_t i = 0; i < mesh_.hinges.size(); ++i) {
    const BendingHinge& hinge = mesh_.hinges[i];
    if (hinge.severed) continue;
    HingeScatter sc;
    sc.hinge = static_cast<int>(i);
    sc.dof = {dof_base_[hinge.a], dof_base_[hinge.b], dof_base_[hinge.c]};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        block_slots(sc.dof[x], sc.dof[y], sc.slots.data() + (x * 3 + y) * 9);
    hinge_scatter_.push_back(sc);
  }
  bond_scatter_.clear();
  for (std::size_t i = 0; i < mesh_.bonds.size(); ++i) {
    const int dn = dof_base_[mesh_.bonds[i].node];
    BondScatter sc;
    sc.bond = static_cast<int>(i);
    sc.dof = dn;
    for (int r = 0; r < 3; ++r) sc.slots[r] = dn < 0 ? -1 : find_slot(dn + r, dn + r);
    bond_scatter_.push_back(sc);
  }
}

double EquilibriumSolver::total_energy(const std::vector<Vector3d>& pos) const {
  double e = 0.0;
  for (const StretchLink& link : mesh_.links) {
    if (link.severed) continue;
    const double len = (pos[link.b] - pos[link.a]).norm();
    const double stretch = len - link.rest_length;
    e += 0.5 * link.stiffness * stretch * stretch;
  }
  for (const BendingHinge& hinge : mesh_.hinges) {
    if (hinge.severed) continue;
    const Vector3d d1 = pos[hinge.b] - pos[hinge.a];
    const Vector3d d2 = pos[hinge.c] - pos[hinge.b];
    const double l1 = d1.norm(), l2 = d2.norm();
    if (l1 <= 0.0 || l2 <= 0.0) continue;
    e += hinge.stiffness * (1.0 - d1.dot(d2) / (l1 * l2));
  }
  for (const CohesiveBond& bond : mesh_.bonds) {
    const Vector3d& p = pos[bond.node];
    const Vector3d& ref = mesh_.reference[bond.node];
    const double dt = std::hypot(p.x() - ref.x(), p.y() - ref.y());
    e += bond.area * mesh_.law.elastic_energy_density(p.z(), dt, bond.damage);
  }
  if (!std::isfinite(e)) throw std::logic_error("solver: non-finite energy");
  return e;
}

double EquilibriumSolver::full_gradient(const std::vector<Vector3d>& pos,
                                        std::vector<Vector3d>& grad) const {
  grad.assign(pos.size(), Vector3d::Zero());
  double e = 0.0;
  for (const StretchLink& link : mesh_.links) {
    if (link.severed) continue;
    const Vector3d d = pos[link.b] - pos[link.a];
    const double len = d.norm();
    if (len <= 0.0) continue;
    const double stretch = len - link.rest_length;
    e += 0.5 * link.stiffness * stretch * stretch;
    const Vector3d f = (link.stiffness * stretch / len) * d;
    grad[link.a] -= f;
    grad[link.b] += f;
  }
  for (const BendingHinge& hinge : mesh_.hinges) {
    if (hinge.severed) continue;
    const Vector3d d1 = pos[hinge.b] - pos[hinge.a];
    const Vector3d d2 = pos[hinge.c] - pos[hinge.b];
    const double l1 = d1.norm(), l2 = d2.norm();
    if (l1 <= 0.0 || l2 <= 0.0) continue;
    const Vector3d u = d1 / l1, v = d2 / l2;
    e += hinge.stiffness * (1.0 - u.dot(v));
    const Vector3d gu = (v - u * u.dot(v)) / l1; // d(u.v)/d d1
    const Vector3d gv = (u - v * u.dot(v)) / l2; // d(u.v)/d d2
    grad[hinge.a] += hinge.stiffness * gu;
    grad[hinge.b] += hinge.stiffness * (gv - gu);
    grad[hinge.c] -= hinge.stiffness * gv;
  }
  for (const CohesiveBond& bond : mesh_.bonds) {
    const Vector3d& p = pos[bond.node];
    const Vector3d& ref = mesh_.reference[bond.node];
    const double sx = p.x() - ref.x(), sy = p.y() - ref.y();
    const double dn = p.z();
    const double dt = std::hypot(sx, sy);
    e += bond.area * mesh_.law.elastic_energy_density(dn, dt, bond.damage);
    const double k = mesh_.law.stiffness();
    const double kt = (1.0 - bond.damage) * k;
    const double kn = dn >= 0.0 ? kt : mesh_.law.contact_stiffness();
    grad[bond.node] += bond.area * Vector3d(kt * sx, kt * sy, kn * dn);
  }
  return e;
}

void EquilibriumSolver::assemble(Eigen::VectorXd& grad) {
  double* values = hessian_.valuePtr();
  std::fill(values, values + hessian_.nonZeros(), 0.0);
  grad.setZero(n_dof_);

  auto scatter3 = [&](const int* slots, const Matrix3d& m) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (slots[r * 3 + c] >= 0) values[slots[r * 3 + c]] += m(r, c);
  };

  for (const LinkScatter& sc : link_scatter_) {
    const StretchLink& link = mesh_.links[sc.link];
    const Vector3d d = positions_[link.b] - positions_[link.a];
    const double len = d.norm();
    if (len <= 0.0) continue;
    const Vector3d u = d / len;
    const Vector3d f = link.stiffness * (len - link.rest_length) * u;
    if (sc.dof_a >= 0) grad.segment<3>(sc.dof_a) -= f;
    if (sc.dof_b >= 0) grad.segment<3>(sc.dof_b) += f;
    const Matrix3d m = spring_block(u, link.stiffness, link.rest_length / len);
    scatter3(sc.slots.data() + 0, m);
    scatter3(sc.slots.data() + 9, m);
    scatter3(sc.slots.data() + 18, -m);
    scatter3(sc.slots.data() + 27, -m);
  }

  for (const HingeScatter& sc : hinge_scatter_) {
    const BendingHinge& hinge = mesh_.hinges[sc.hinge];
    const Vector3d d1 = positions_[hinge.b] - positions_[hinge.a];
    const Vector3d d2 = positions_[hinge.c] - positions_[hinge.b];
    const double l1 = d1.norm(), l2 = d2.norm();
    if (l1 <= 0.0 || l2 <= 0.0) continue;
    const Vector3d u = d1 / l1, v = d2 / l2;
    const double cuv = u.dot(v);
    const double k = hinge.stiffness;

    const Vector3d p1v = v - u * cuv; // P1 * v
    const Vector3d p2u = u - v * cuv; // P2 * u
    if (sc.dof[0] >= 0) grad.segment<3>(sc.dof[0]) += k * p1v / l1;
    if (sc.dof[1] >= 0) grad.segment<3>(sc.dof[1]) += k * (p2u / l2 - p1v / l1);
    if (sc.dof[2] >= 0) grad.segment<3>(sc.dof[2]) -= k * p2u / l2;

    const Matrix3d uu = u * u.transpose();
    const Matrix3d vv = v * v.transpose();
    const Matrix3d p1 = Matrix3d::Identity() - uu;
    const Matrix3d p2 = Matrix3d::Identity() - vv;
    const Matrix3d a11 =
        (k / (l1 * l1)) * (p1v * u.transpose() + u * p1v.transpose() + cuv * p1);
    const Matrix3d a22 =
        (k / (l2 * l2)) * (p2u * v.transpose() + v * p2u.transpose() + cuv * p2);
    const Matrix3d a12 = (-k / (l1 * l2)) * (p1 * p2);
    const Matrix3d a21 = a12.transpose();

    // d1 = b - a, d2 = c - b; chain-rule coefficients per node.
    const double c1[3] = {-1.0, 1.0, 0.0};
    const double c2[3] = {0.0, -1.0, 1.0};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        const Matrix3d hxy = c1[x] * c1[y] * a11 + c1[x] * c2[y] * a12 + c2[x] * c1[y] * a21 +
                             c2[x] * c2[y] * a22;
        scatter3(sc.slots.data() + (x * 3 + y) * 9, hxy);
      }
  }

  for (const BondScatter& sc : bond_scatter_) {
    if (sc.dof < 0) continue;
    const CohesiveBond& bond = mesh_.bonds[sc.bond];
    const Vector3d& p = positions_[bond.node];
    const Vector3d& ref = mesh_.reference[bond.node];
    const double sx = p.x() - ref.x(), sy = p.y() - ref.y();
    const double dn = p.z();
    const double k = mesh_.law.stiffness();
    const double kt = (1.0 - bond.damage) * k;
    const double kn = dn >= 0.0 ? kt : mesh_.law.contact_stiffness();
    grad.segment<3>(sc.dof) += bond.area * Vector3d(kt * sx, kt * sy, kn * dn);
    values[sc.slots[0]] += bond.area * kt;
    values[sc.slots[1]] += bond.area * kt;
    values[sc.slots[2]] += bond.area * kn;
  }
}

void EquilibriumSolver::newton_minimize(int& iterations) {
  if (n_dof_ == 0) return;

  Eigen::VectorXd grad(n_dof_), direction(n_dof_);
  std::vector<Vector3d> trial(positions_.size());
  std::vector<int> diag_slots;

  for (int iter = 0; iter < params_.max_newton_iterations; ++iter) {
    ++iterations;
    assemble(grad);
    if (grad.lpNorm<Eigen::Infinity>() <= tol_force_) return;

    if (diag_slots.empty()) {
      diag_slots.resize(n_dof_);
      const int* outer = hessian_.outerIndexPtr();
      const int* inner = hessian_.innerIndexPtr();
      for (int col = 0; col < n_dof_; ++col) {
        int lo = outer[col], hi = outer[col + 1];
        while (lo < hi) {
          const int mid = (lo + hi) / 2;
          if (inner[mid] < col)
            lo = mid + 1;
          else
            hi = mid;
        }
        diag_slots[col] = lo;
      }
    }

    double diag_max = 0.0;
    for (int col = 0; col < n_dof_; ++col)
      diag_max = std::max(diag_max, hessian_.valuePtr()[diag_slots[col]]);

    // Factor, boosting the diagonal until we get a descent direction.
    double shift_applied = 0.0;
    double shift = 0.0;
    bool have_direction = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      if (shift > shift_applied) {
        const double delta = shift - shift_applied;
        for (int col = 0; col < n_dof_; ++col) hessian_.valuePtr()[diag_slots[col]] += delta;
        shift_applied = shift;
      }
      if (!pattern_analyzed_) {
        llt_.analyzePattern(hessian_);
        pattern_analyzed_ = true;
      }
      llt_.factorize(hessian_);
      if (llt_.info() == Eigen::Success) {
        direction = llt_.solve(-grad);
        if (grad.dot(direction) < 0.0) {
          have_direction = true;
          break;
        }
      }
      shift = shift <= 0.0 ? std::max(1e-10 * diag_max, 1e-16) : shift * 100.0;
    }
    if (!have_direction) direction = -grad / std::max(diag_max, 1.0);

    const double gd = grad.dot(direction);
    const double e0 = total_energy(positions_);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      trial = positions_;
      for (std::size_t n = 0; n < trial.size(); ++n) {
        const int dof = dof_base_[static_cast<int>(n)];
        if (dof >= 0) trial[n] += t * direction.segment<3>(dof);
      }
      const double et = total_energy(trial);
      if (et <= e0 + 1e-4 * t * gd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) throw NonConvergence("solver: line search stalled");
    positions_.swap(trial);
  }
  throw NonConvergence("solver: Newton iteration limit reached");
}

bool EquilibriumSolver::update_damage() {
  bool changed = false;
  const double k = mesh_.law.stiffness();
  for (CohesiveBond& bond : mesh_.bonds) {
    const Vector3d& p = positions_[bond.node];
    const Vector3d& ref = mesh_.reference[bond.node];
    const double dt = std::hypot(p.x() - ref.x(), p.y() - ref.y());
    const double dn = p.z();
    const double d_new = mesh_.law.damage_at(dn, dt);
    if (d_new > bond.damage + params_.damage_change_tol) {
      const double dn_pos = dn > 0.0 ? dn : 0.0;
      dissipated_ += bond.area * 0.5 * k * (dn_pos * dn_pos + dt * dt) * (d_new - bond.damage);
      bond.damage = d_new;
      changed = true;
    }
  }
  return changed;
}

double EquilibriumSolver::bonded_fraction() const {
  return initial_bonded_area_ > 0.0 ? mesh_.bonded_area() / initial_bonded_area_ : 0.0;
}

StepSummary EquilibriumSolver::step(double grip_height) {
  grip_height_ = grip_height;
  for (int g : gripped_) {
    positions_[g].x() = mesh_.reference[g].x();
    positions_[g].y() = mesh_.reference[g].y();
    positions_[g].z() = grip_height;
  }

  StepSummary summary;
  summary.grip_height = grip_height;
  int pass = 0;
  while (true) {
    ++pass;
    // Relaxation after a damage update releases stored energy at fixed
    // grip height; that release is debonding cascade loss, booked as
    // dissipation so external work stays balanced against the ledger.
    const double e_pre = pass > 1 ? total_energy(positions_) : 0.0;
    newton_minimize(summary.newton_iterations);
    if (pass > 1) dissipated_ += std::max(0.0, e_pre - total_energy(positions_));
    if (!update_damage()) break;
    if (pass >= params_.max_stagger_passes)
      throw NonConvergence("solver: damage staggering did not settle");
  }
  summary.stagger_passes = pass;

  std::vector<Vector3d> grad;
  summary.elastic_energy = full_gradient(positions_, grad);
  double reaction = 0.0;
  for (int g : gripped_) reaction += grad[g].z();
  summary.reaction_force = reaction;
  summary.dissipated_energy = dissipated_;
  summary.bonded_fraction = bonded_fraction();
  return summary;
}

} // namespace metapeel
