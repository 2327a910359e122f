#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>
#include <vector>

#include "metapeel/mesh.hpp"

namespace metapeel {

struct SolverParams {
  /// Residual inf-norm tolerance = scale * sigma_max * tributary area.
  double tolerance_scale = 1e-6;
  int max_newton_iterations = 200; // per energy minimization
  int max_stagger_passes = 200;    // damage updates per step
  double damage_change_tol = 1e-10;
};

/// Converged state summary after one displacement increment.
struct StepSummary {
  double grip_height = 0.0;       // m
  double reaction_force = 0.0;    // N, vertical force carried by the grip
  double elastic_energy = 0.0;    // J, sheet + recoverable cohesive + contact
  double dissipated_energy = 0.0; // J, cumulative cohesive dissipation
  double bonded_fraction = 1.0;   // area-weighted
  int newton_iterations = 0;
  int stagger_passes = 0;
};

/// Quasi-static solver for one peel: minimizes the total potential energy
/// (elastic + cohesive at fixed damage) under the prescribed grip height,
/// then updates damage, staggering until the damage field is stationary
/// within the step. Gripped nodes are held at their reference x,y and the
/// imposed z. Damage is irreversible across the solver's lifetime.
class EquilibriumSolver {
public:
  EquilibriumSolver(Mesh mesh, std::vector<int> gripped_nodes, SolverParams params = {});

  /// Advance to equilibrium at the given grip height. Throws NonConvergence
  /// when the Newton iteration stalls; the caller may halve the increment
  /// once before declaring the design failed.
  StepSummary step(double grip_height);

  const Mesh& mesh() const { return mesh_; }
  const std::vector<Eigen::Vector3d>& positions() const { return positions_; }
  double dissipated_energy() const { return dissipated_; }
  double bonded_fraction() const;

private:
  struct LinkScatter {
    int link = 0;
    int dof_a = -1, dof_b = -1; // -1 = gripped
    std::array<int, 36> slots;  // value indices, row-major over 2x2 blocks of 3x3
  };
  struct HingeScatter {
    int hinge = 0;
    std::array<int, 3> dof;
    std::array<int, 81> slots;
  };
  struct BondScatter {
    int bond = 0;
    int dof = -1;
    std::array<int, 3> slots; // diagonal entries
  };

  void build_pattern();
  double total_energy(const std::vector<Eigen::Vector3d>& pos) const;
  /// Gradient over every DOF, gripped included (for reactions). Returns energy.
  double full_gradient(const std::vector<Eigen::Vector3d>& pos,
                       std::vector<Eigen::Vector3d>& grad) const;
  void assemble(Eigen::VectorXd& grad);
  void newton_minimize(int& iterations);
  bool update_damage();

  Mesh mesh_;
  SolverParams params_;
  std::vector<int> gripped_;
  std::vector<char> is_gripped_;
  std::vector<int> dof_base_; // per node, -1 when gripped
  int n_dof_ = 0;
  double tol_force_ = 0.0;

  std::vector<Eigen::Vector3d> positions_;
  double grip_height_ = 0.0;
  double dissipated_ = 0.0;
  double initial_bonded_area_ = 0.0;

  Eigen::SparseMatrix<double> hessian_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
  bool pattern_analyzed_ = false;
  std::vector<LinkScatter> link_scatter_;
  std::vector<HingeScatter> hinge_scatter_;
  std::vector<BondScatter> bond_scatter_;
};

/// Contract-level wrapper: one increment of the staggered solve.
inline StepSummary solve_step(EquilibriumSolver& solver, double imposed_displacement) {
  return solver.step(imposed_displacement);
}

} // namespace metapeel
