#pragma once

#include <cstdint>
#include <string>

#include "metapeel/optimizer.hpp"
#include "metapeel/studies.hpp"

namespace metapeel {

/// Complete, serializable description of one run. A persisted config
/// reloaded through load_config() reproduces the run bit-identically.
/// Defaults match the standard setup: 10x15 mm cell, endpoints (2.5,0)
/// and (7.5,0), population 50 over 12 generations, 0.1 mm increments.
struct RunConfig {
  // geometry
  UnitCell cell;
  std::array<Vec2, 2> endpoints{{{2.5, 0.0}, {7.5, 0.0}}};
  double aspect_ratio_limit = 50.0;

  // material
  MaterialParams material;

  // discretization and peel protocol
  PeelProtocol protocol;
  double refine_resolution = 2.0; // elements/mm for the final-front re-evaluation

  // optimizer
  int n_points = 5;
  int population = 50;
  int generations = 12;
  VariationParams variation;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool refine_front = true;

  // reference shapes
  ReferenceDims reference_dims;
  bool with_uncut_control = false;

  EvaluationSetup evaluation_setup() const;
  OptimizationConfig optimization_config() const;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Parse the TOML-style structured text used for run configs: `[section]`
/// headers and `key = value` lines, `#` comments. Unknown keys raise
/// ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical serialization; parse(serialize(c)) == c byte-for-byte after
/// re-serialization.
std::string serialize_config(const RunConfig& config);

/// Apply one dotted-key override, e.g. ("material.release-rate", "5600").
void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value);

} // namespace metapeel
