#pragma once

#include <iosfwd>
#include <vector>

#include "metapeel/mesh.hpp"
#include "metapeel/solver.hpp"

namespace metapeel {

enum class PeelDirection { forward, reverse };

/// Scalar reduced from a trace to score adhesion. `mean_elastic` is the
/// stored (internal) energy averaged over the imposed displacement,
/// `peak_elastic` its maximum, `external_work` the force-displacement
/// integral to full detachment.
enum class EnergyObjective { mean_elastic, peak_elastic, external_work };

struct TraceStep {
  double displacement = 0.0;    // m
  double force = 0.0;           // N
  double elastic = 0.0;         // J
  double dissipated = 0.0;      // J (cumulative)
  double bonded_fraction = 1.0; // area-weighted
};

struct PeelTrace {
  std::vector<TraceStep> steps; // starts with the undisturbed state

  bool detached() const {
    return !steps.empty() && steps.back().bonded_fraction <= 0.0;
  }
};

struct PeelResult {
  double forward_energy = 0.0;
  double reverse_energy = 0.0;
  double energy_ratio = 0.0;
  PeelTrace forward_trace;
  PeelTrace reverse_trace;
};

/// Peel protocol knobs. The sheet is raised in fixed increments from one
/// edge until no bond remains. Forward lifts the edge carrying the cut
/// opening (the hinge edge, y = 0); reverse lifts the opposite edge.
struct PeelProtocol {
  double increment = 1.0e-4; // m
  int max_steps = 4000;
  double resolution = 1.0; // elements per mm
  EnergyObjective objective = EnergyObjective::mean_elastic;
  bool forward_lifts_hinge_edge = true;
  SolverParams solver;
};

/// March the grip upward until the sheet detaches. A non-converged step is
/// retried once at half the increment; failing that, NonConvergence
/// propagates. Returns an incomplete trace when max_steps is exhausted.
PeelTrace peel_simulate(Mesh mesh, PeelDirection direction, const PeelProtocol& protocol);
PeelTrace peel_simulate(const CutShape& shape, const MaterialParams& material,
                        PeelDirection direction, const PeelProtocol& protocol);
PeelTrace peel_simulate(const UnitCell& uncut_cell, const MaterialParams& material,
                        PeelDirection direction, const PeelProtocol& protocol);

/// Trapezoid integral of reaction force over imposed displacement [J].
double external_work(const PeelTrace& trace);

/// Scalar adhesion energy of a trace under the given objective [J].
double trace_energy(const PeelTrace& trace, EnergyObjective objective);

/// Largest relative energy-balance defect |W - stored - dissipated| / W
/// over the trace (steps with negligible work are skipped).
double max_energy_balance_error(const PeelTrace& trace);

/// Forward/reverse energies and their ratio. Throws IncompleteTrace when
/// either trace still has bonded area.
PeelResult adhesion_metrics(const PeelTrace& forward, const PeelTrace& reverse,
                            EnergyObjective objective = EnergyObjective::mean_elastic);

/// CSV with header `displacement_m,force_N,elastic_J,dissipated_J,bonded_fraction`,
/// one row per step, full double precision.
void write_trace_csv(std::ostream& out, const PeelTrace& trace);
PeelTrace read_trace_csv(std::istream& in);

} // namespace metapeel
