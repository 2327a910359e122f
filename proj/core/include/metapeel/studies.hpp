#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metapeel/optimizer.hpp"

namespace metapeel {

enum class ReferenceKind { square, triangle, hybrid };

/// Reference tab silhouettes, all inscribed over the standard endpoints:
/// a rectangular tab, an apex-pointed triangular tab, and a house-shaped
/// hybrid (rectangle topped by a shallow roof). Heights in mm.
struct ReferenceDims {
  double square_height = 10.0;
  double triangle_apex_height = 7.5;
  double hybrid_base_height = 10.0;
  double hybrid_roof_height = 2.5;
};

CutShape reference_shape(ReferenceKind kind, const UnitCell& cell,
                         const std::array<Vec2, 2>& endpoints, const ReferenceDims& dims = {});

struct DesignRow {
  std::string name;
  double forward_energy = 0.0;
  double reverse_energy = 0.0;
  double ratio = 0.0;
};

struct StudyStats {
  double spearman_forward_ratio = 0.0;
  double cv_forward = 0.0;
  double cv_reverse = 0.0;
};

struct StudyReport {
  std::vector<DesignRow> rows;
  std::optional<StudyStats> stats;
  std::vector<double> normalized_directionality;
};

struct BenchmarkOptions {
  ReferenceDims dims;
  bool with_uncut_control = false;
};

/// Simulate the three reference tabs (optionally plus an uncut control)
/// forward and reverse and report energies and ratios.
StudyReport benchmark_references(const EvaluationSetup& setup, const BenchmarkOptions& options = {});

/// True when the reference orderings hold: triangle > hybrid > square on
/// both ratio and forward energy, and every reference ratio > 1.
bool reference_orderings_hold(const StudyReport& report);

/// Statistics over a completed run's feasible evaluations: Spearman rank
/// correlation of forward energy vs ratio, and the coefficients of
/// variation of both peel directions. Throws InsufficientData below 100
/// feasible evaluations.
StudyReport correlation_study(const ParetoArchive& archive);

/// Each design's ratio divided by the maximum ratio in the report; values
/// in (0,1]. Requires at least 2 designs.
std::vector<double> normalize_directionality(const StudyReport& report);

void write_report_csv(std::ostream& out, const StudyReport& report);
void write_report_long_csv(std::ostream& out, const StudyReport& report);
void write_report_text(std::ostream& out, const StudyReport& report);

} // namespace metapeel
