#include "metapeel/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "metapeel/stats.hpp"

namespace metapeel {

CutShape reference_shape(ReferenceKind kind, const UnitCell& cell,
                         const std::array<Vec2, 2>& endpoints, const ReferenceDims& dims) {
  const double x0 = endpoints[0].x;
  const double x1 = endpoints[1].x;
  const double xm = 0.5 * (x0 + x1);
  const double y0 = 0.5 * (endpoints[0].y + endpoints[1].y);

  CutShape shape;
  shape.endpoints = endpoints;
  shape.cell = cell;
  switch (kind) {
    case ReferenceKind::square: {
      const double h = y0 + dims.square_height;
      shape.internal_points = {{x0, h}, {xm, h}, {x1, h}};
      break;
    }
    case ReferenceKind::triangle: {
      const double h = y0 + dims.triangle_apex_height;
      shape.internal_points = {
          {0.5 * (x0 + xm), 0.5 * (y0 + h)}, {xm, h}, {0.5 * (xm + x1), 0.5 * (y0 + h)}};
      break;
    }
    case ReferenceKind::hybrid: {
      const double h = y0 + dims.hybrid_base_height;
      shape.internal_points = {{x0, h}, {xm, h + dims.hybrid_roof_height}, {x1, h}};
      break;
    }
  }
  for (const Vec2& p : shape.internal_points)
    if (!cell.contains(p))
      throw PreconditionViolation("reference_shape: dimensions exceed the unit cell");
  return shape;
}

namespace {

DesignRow simulate_row(const std::string& name, const PeelTrace& fwd, const PeelTrace& rev,
                       EnergyObjective objective) {
  const PeelResult r = adhesion_metrics(fwd, rev, objective);
  return {name, r.forward_energy, r.reverse_energy, r.energy_ratio};
}

} // namespace

StudyReport benchmark_references(const EvaluationSetup& setup, const BenchmarkOptions& options) {
  StudyReport report;
  const struct {
    ReferenceKind kind;
    const char* name;
  } refs[] = {{ReferenceKind::square, "square"},
              {ReferenceKind::triangle, "triangle"},
              {ReferenceKind::hybrid, "hybrid"}};

  for (const auto& ref : refs) {
    const CutShape shape = reference_shape(ref.kind, setup.cell, setup.endpoints, options.dims);
    const PeelTrace fwd =
        peel_simulate(shape, setup.material, PeelDirection::forward, setup.protocol);
    const PeelTrace rev =
        peel_simulate(shape, setup.material, PeelDirection::reverse, setup.protocol);
    report.rows.push_back(simulate_row(ref.name, fwd, rev, setup.protocol.objective));
  }

  if (options.with_uncut_control) {
    const PeelTrace fwd =
        peel_simulate(setup.cell, setup.material, PeelDirection::forward, setup.protocol);
    const PeelTrace rev =
        peel_simulate(setup.cell, setup.material, PeelDirection::reverse, setup.protocol);
    report.rows.push_back(simulate_row("uncut", fwd, rev, setup.protocol.objective));
  }
  return report;
}

bool reference_orderings_hold(const StudyReport& report) {
  const DesignRow* square = nullptr;
  const DesignRow* triangle = nullptr;
  const DesignRow* hybrid = nullptr;
  for (const DesignRow& row : report.rows) {
    if (row.name == "square") square = &row;
    if (row.name == "triangle") triangle = &row;
    if (row.name == "hybrid") hybrid = &row;
  }
  if (!square || !triangle || !hybrid) return false;
  const bool ratio_order = triangle->ratio > hybrid->ratio && hybrid->ratio > square->ratio;
  const bool energy_order = triangle->forward_energy > hybrid->forward_energy &&
                            hybrid->forward_energy > square->forward_energy;
  const bool all_directional =
      square->ratio > 1.0 && triangle->ratio > 1.0 && hybrid->ratio > 1.0;
  return ratio_order && energy_order && all_directional;
}

StudyReport correlation_study(const ParetoArchive& archive) {
  std::vector<double> forward, reverse, ratio;
  StudyReport report;
  for (const Individual& ind : archive.evaluations) {
    if (!ind.feasible) continue;
    forward.push_back(ind.objectives.forward_energy);
    reverse.push_back(ind.reverse_energy);
    ratio.push_back(ind.objectives.ratio);
    char name[48];
    std::snprintf(name, sizeof(name), "gen%02d-%04zu", ind.generation, forward.size() - 1);
    report.rows.push_back(
        {name, ind.objectives.forward_energy, ind.reverse_energy, ind.objectives.ratio});
  }
  if (forward.size() < 100)
    throw InsufficientData("correlation_study: needs >= 100 feasible evaluations");

  StudyStats stats;
  stats.spearman_forward_ratio = spearman(forward, ratio);
  stats.cv_forward = coefficient_of_variation(forward);
  stats.cv_reverse = coefficient_of_variation(reverse);
  report.stats = stats;
  return report;
}

std::vector<double> normalize_directionality(const StudyReport& report) {
  if (report.rows.size() < 2)
    throw PreconditionViolation("normalize_directionality: needs >= 2 designs");
  double max_ratio = 0.0;
  for (const DesignRow& row : report.rows) max_ratio = std::max(max_ratio, row.ratio);
  if (!(max_ratio > 0.0))
    throw PreconditionViolation("normalize_directionality: no positive ratio");
  std::vector<double> out;
  out.reserve(report.rows.size());
  for (const DesignRow& row : report.rows) out.push_back(row.ratio / max_ratio);
  return out;
}

void write_report_csv(std::ostream& out, const StudyReport& report) {
  out << "design,forward_energy_J,reverse_energy_J,ratio\n";
  char buf[192];
  for (const DesignRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n", row.name.c_str(),
                  row.forward_energy, row.reverse_energy, row.ratio);
    out << buf;
  }
}

void write_report_long_csv(std::ostream& out, const StudyReport& report) {
  out << "design,metric,value\n";
  char buf[160];
  auto emit = [&](const std::string& design, const char* metric, double value) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.17g\n", design.c_str(), metric, value);
    out << buf;
  };
  const std::vector<double> normalized =
      report.rows.size() >= 2 ? normalize_directionality(report) : std::vector<double>{};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const DesignRow& row = report.rows[i];
    emit(row.name, "forward_energy_J", row.forward_energy);
    emit(row.name, "reverse_energy_J", row.reverse_energy);
    emit(row.name, "ratio", row.ratio);
    if (!normalized.empty()) emit(row.name, "normalized_directionality", normalized[i]);
  }
}

void write_report_text(std::ostream& out, const StudyReport& report) {
  char buf[192];
  out << "design        forward [J]    reverse [J]    ratio\n";
  for (const DesignRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%-12s  %12.6g  %12.6g  %8.4g\n", row.name.c_str(),
                  row.forward_energy, row.reverse_energy, row.ratio);
    out << buf;
  }
  if (report.stats) {
    std::snprintf(buf, sizeof(buf),
                  "\nspearman(forward, ratio) = %.4f\ncv(forward) = %.4f\ncv(reverse) = %.4f\n",
                  report.stats->spearman_forward_ratio, report.stats->cv_forward,
                  report.stats->cv_reverse);
    out << buf;
  }
}

} // namespace metapeel
