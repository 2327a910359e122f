#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "metapeel/geometry.hpp"
#include "metapeel/material.hpp"
#include "metapeel/peel.hpp"
#include "metapeel/rng.hpp"

namespace metapeel {

/// Design genotype: 2n values in [0,1], the normalized x,y of each internal
/// point. n must be 3, 5 or 7.
struct Genome {
  std::vector<double> coords;

  int n_points() const { return static_cast<int>(coords.size() / 2); }
  bool operator==(const Genome&) const = default;
};

struct Objectives {
  double forward_energy = 0.0; // maximized
  double ratio = 0.0;          // maximized
};

struct Individual {
  Genome genome;
  Objectives objectives;
  double reverse_energy = 0.0;
  bool feasible = false;
  int rank = 0;
  double crowding = 0.0;
  int generation = 0;
};

/// Constraint-dominated Pareto dominance, both objectives maximized:
/// feasible always beats infeasible; two infeasible never dominate each
/// other.
bool dominates(const Individual& a, const Individual& b);

/// Fast non-dominated sorting (Deb et al., NSGA-II). Returns fronts of
/// indices into the population; front 0 is non-dominated.
std::vector<std::vector<int>> non_dominated_sort(const std::vector<Individual>& population);

/// Crowding distances for one front (indices into the population).
/// Boundary individuals per objective get infinity; interior ones sum
/// normalized neighbor gaps.
std::vector<double> crowding_distance(const std::vector<Individual>& population,
                                      const std::vector<int>& front);

struct VariationParams {
  double sbx_eta = 15.0;
  double sbx_prob = 0.9;
  double mutation_eta = 20.0;
  double mutation_prob = -1.0; // <= 0 means 1/(2n)
};

/// Binary tournament on (rank, crowding), simulated binary crossover and
/// polynomial mutation, all clamped to [0,1]. Produces population-size
/// offspring genomes.
std::vector<Genome> make_offspring(const std::vector<Individual>& population, Rng& rng,
                                   const VariationParams& params);

/// Elitist (mu+lambda) selection: non-dominated fronts fill the next
/// population, the straddling front truncated by crowding distance.
/// Assigns rank and crowding on the survivors.
std::vector<Individual> environmental_selection(const std::vector<Individual>& candidates,
                                                std::size_t target_size);

/// Everything evaluate() needs to score one genome.
struct EvaluationSetup {
  UnitCell cell;
  std::array<Vec2, 2> endpoints{{{2.5, 0.0}, {7.5, 0.0}}};
  MaterialParams material;
  PeelProtocol protocol;
  double aspect_ratio_limit = 50.0;
};

/// Denormalize a genome into cell millimeters and repair the ordering.
/// Propagates DegenerateInput for coincident points.
CutShape genome_to_shape(const Genome& genome, const UnitCell& cell,
                         const std::array<Vec2, 2>& endpoints);

/// Renormalize a shape's internal points back to [0,1] genome coordinates.
Genome shape_to_genome(const CutShape& shape);

/// Score one genome: repair, filter high-aspect-ratio designs, run forward
/// and reverse peels. Failures of any kind (degenerate genome, unresolved
/// feature, non-convergence, incomplete trace) mark the design infeasible
/// with sentinel worst objectives; nothing is thrown.
Individual evaluate(const Genome& genome, const EvaluationSetup& setup);

struct OptimizationConfig {
  int n_points = 5; // 3, 5 or 7
  int population = 50;
  int generations = 12;
  VariationParams variation;
  std::uint64_t seed = 1;
  int jobs = 1;
  EvaluationSetup setup;
};

struct ParetoArchive {
  std::vector<Individual> evaluations; // append-only, generation-stamped

  std::vector<Individual> pareto_front() const;
  /// Non-dominated feasible subset of evaluations with generation <= gen.
  std::vector<Individual> front_at_generation(int gen) const;
};

/// Feasible-front hypervolume against a reference point (defaults to the
/// origin; both objectives are positive for feasible designs).
double front_hypervolume(const std::vector<Individual>& front,
                         std::array<double, 2> reference = {0.0, 0.0});

using Evaluator = std::function<Individual(const Genome&)>;
using EvalCallback = std::function<void(const Individual&, int eval_index)>;

/// Full NSGA-II run: random initial population, `generations - 1` offspring
/// rounds, every evaluation archived in order with its generation index.
/// Offspring evaluations may run on `jobs` threads; variation consumes the
/// RNG sequentially, so results are independent of the thread count.
/// A custom evaluator replaces the mechanics-backed default (which caches
/// by genome bytes).
ParetoArchive run_optimization(const OptimizationConfig& config, Evaluator evaluator = {},
                               EvalCallback on_eval = {});

} // namespace metapeel
