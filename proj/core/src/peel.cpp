#include "metapeel/peel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "metapeel/errors.hpp"

namespace metapeel {

PeelTrace peel_simulate(Mesh mesh, PeelDirection direction, const PeelProtocol& protocol) {
  if (!(protocol.increment > 0.0))
    throw PreconditionViolation("peel_simulate: increment must be > 0");

  const bool lift_bottom =
      (direction == PeelDirection::forward) == protocol.forward_lifts_hinge_edge;
  std::vector<int> grip = lift_bottom ? mesh.bottom_edge_nodes() : mesh.top_edge_nodes();

  EquilibriumSolver solver(std::move(mesh), std::move(grip), protocol.solver);

  PeelTrace trace;
  trace.steps.push_back({0.0, 0.0, 0.0, 0.0, solver.bonded_fraction()});

  for (int k = 1; k <= protocol.max_steps; ++k) {
    const double u = k * protocol.increment;
    StepSummary s;
    try {
      s = solver.step(u);
    } catch (const NonConvergence&) {
      // One retry at half the increment; a second failure fails the design.
      solver.step(u - 0.5 * protocol.increment);
      s = solver.step(u);
    }
    trace.steps.push_back(
        {u, s.reaction_force, s.elastic_energy, s.dissipated_energy, s.bonded_fraction});
    if (s.bonded_fraction <= 0.0) return trace;
  }
  return trace; // incomplete; adhesion_metrics will reject it
}

PeelTrace peel_simulate(const CutShape& shape, const MaterialParams& material,
                        PeelDirection direction, const PeelProtocol& protocol) {
  return peel_simulate(build_mesh(shape, protocol.resolution, material), direction, protocol);
}

PeelTrace peel_simulate(const UnitCell& uncut_cell, const MaterialParams& material,
                        PeelDirection direction, const PeelProtocol& protocol) {
  return peel_simulate(build_mesh(uncut_cell, protocol.resolution, material), direction, protocol);
}

double external_work(const PeelTrace& trace) {
  double w = 0.0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const TraceStep& a = trace.steps[i - 1];
    const TraceStep& b = trace.steps[i];
    w += 0.5 * (a.force + b.force) * (b.displacement - a.displacement);
  }
  return w;
}

double trace_energy(const PeelTrace& trace, EnergyObjective objective) {
  switch (objective) {
    case EnergyObjective::external_work:
      return external_work(trace);
    case EnergyObjective::peak_elastic: {
      double peak = 0.0;
      for (const TraceStep& s : trace.steps) peak = std::max(peak, s.elastic);
      return peak;
    }
    case EnergyObjective::mean_elastic: {
      if (trace.steps.size() < 2) return 0.0;
      double integral = 0.0;
      for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        const TraceStep& a = trace.steps[i - 1];
        const TraceStep& b = trace.steps[i];
        integral += 0.5 * (a.elastic + b.elastic) * (b.displacement - a.displacement);
      }
      const double span = trace.steps.back().displacement - trace.steps.front().displacement;
      return span > 0.0 ? integral / span : 0.0;
    }
  }
  return 0.0;
}

double max_energy_balance_error(const PeelTrace& trace) {
  double worst = 0.0;
  double w = 0.0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const TraceStep& a = trace.steps[i - 1];
    const TraceStep& b = trace.steps[i];
    w += 0.5 * (a.force + b.force) * (b.displacement - a.displacement);
    if (w <= 1e-15) continue;
    const double stored_plus_dissipated =
        (b.elastic - trace.steps.front().elastic) + (b.dissipated - trace.steps.front().dissipated);
    worst = std::max(worst, std::abs(w - stored_plus_dissipated) / w);
  }
  return worst;
}

PeelResult adhesion_metrics(const PeelTrace& forward, const PeelTrace& reverse,
                            EnergyObjective objective) {
  if (!forward.detached() || !reverse.detached())
    throw IncompleteTrace("adhesion_metrics: trace never fully detached");

  PeelResult result;
  result.forward_trace = forward;
  result.reverse_trace = reverse;
  result.forward_energy = trace_energy(forward, objective);
  result.reverse_energy = trace_energy(reverse, objective);
  result.energy_ratio =
      result.reverse_energy > 0.0 ? result.forward_energy / result.reverse_energy : 0.0;
  return result;
}

void write_trace_csv(std::ostream& out, const PeelTrace& trace) {
  out << "displacement_m,force_N,elastic_J,dissipated_J,bonded_fraction\n";
  char buf[160];
  for (const TraceStep& s : trace.steps) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.displacement, s.force,
                  s.elastic, s.dissipated, s.bonded_fraction);
    out << buf;
  }
}

PeelTrace read_trace_csv(std::istream& in) {
  PeelTrace trace;
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceStep s;
    std::istringstream row(line);
    char comma;
    row >> s.displacement >> comma >> s.force >> comma >> s.elastic >> comma >> s.dissipated >>
        comma >> s.bonded_fraction;
    trace.steps.push_back(s);
  }
  return trace;
}

} // namespace metapeel
