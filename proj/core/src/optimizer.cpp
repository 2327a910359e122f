#include "metapeel/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "metapeel/stats.hpp"

namespace metapeel {

bool dominates(const Individual& a, const Individual& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return false;
  const bool ge = a.objectives.forward_energy >= b.objectives.forward_energy &&
                  a.objectives.ratio >= b.objectives.ratio;
  const bool gt = a.objectives.forward_energy > b.objectives.forward_energy ||
                  a.objectives.ratio > b.objectives.ratio;
  return ge && gt;
}

std::vector<std::vector<int>> non_dominated_sort(const std::vector<Individual>& population) {
  const int n = static_cast<int>(population.size());
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> domination_count(n, 0);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(population[i], population[j])) dominated[i].push_back(j);
      else if (dominates(population[j], population[i])) ++domination_count[i];
    }

  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (int i = 0; i < n; ++i)
    if (domination_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (int i : current)
      for (int j : dominated[i])
        if (--domination_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<Individual>& population,
                                      const std::vector<int>& front) {
  const std::size_t m = front.size();
  std::vector<double> distance(m, 0.0);
  if (m == 0) return distance;
  if (m <= 2) {
    std::fill(distance.begin(), distance.end(), std::numeric_limits<double>::infinity());
    return distance;
  }

  auto objective = [&](int idx, int k) {
    return k == 0 ? population[idx].objectives.forward_energy : population[idx].objectives.ratio;
  };

  for (int k = 0; k < 2; ++k) {
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objective(front[a], k) < objective(front[b], k);
    });
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    const double span = objective(front[order.back()], k) - objective(front[order.front()], k);
    if (span <= 0.0) continue; // duplicate objectives contribute zero
    for (std::size_t i = 1; i + 1 < m; ++i)
      distance[order[i]] += (objective(front[order[i + 1]], k) -
                             objective(front[order[i - 1]], k)) / span;
  }
  return distance;
}

namespace {

// (rank, crowding) tournament; ties keep the first pick for determinism.
int tournament(const std::vector<Individual>& pop, Rng& rng) {
  const int i = static_cast<int>(rng.below(pop.size()));
  const int j = static_cast<int>(rng.below(pop.size()));
  if (pop[i].rank != pop[j].rank) return pop[i].rank < pop[j].rank ? i : j;
  if (pop[i].crowding != pop[j].crowding) return pop[i].crowding > pop[j].crowding ? i : j;
  return i;
}

// Bounded SBX on [0,1] (Deb & Agrawal).
void sbx_crossover(const std::vector<double>& p1, const std::vector<double>& p2,
                   std::vector<double>& c1, std::vector<double>& c2, Rng& rng, double eta,
                   double prob) {
  c1 = p1;
  c2 = p2;
  if (rng.uniform01() > prob) return;
  for (std::size_t k = 0; k < p1.size(); ++k) {
    if (rng.uniform01() > 0.5) continue;
    const double x1 = p1[k], x2 = p2[k];
    if (std::abs(x1 - x2) <= 1e-14) continue;
    const double lo = std::min(x1, x2), hi = std::max(x1, x2);
    const double rand = rng.uniform01();

    auto child = [&](double beta_bound) {
      const double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
      if (rand <= 1.0 / alpha) return std::pow(rand * alpha, 1.0 / (eta + 1.0));
      return std::pow(1.0 / (2.0 - rand * alpha), 1.0 / (eta + 1.0));
    };

    const double beta_lo = 1.0 + 2.0 * (lo - 0.0) / (hi - lo);
    const double beta_hi = 1.0 + 2.0 * (1.0 - hi) / (hi - lo);
    double ch1 = 0.5 * ((lo + hi) - child(beta_lo) * (hi - lo));
    double ch2 = 0.5 * ((lo + hi) + child(beta_hi) * (hi - lo));
    ch1 = std::clamp(ch1, 0.0, 1.0);
    ch2 = std::clamp(ch2, 0.0, 1.0);
    if (rng.uniform01() <= 0.5) std::swap(ch1, ch2);
    c1[k] = ch1;
    c2[k] = ch2;
  }
}

// Bounded polynomial mutation on [0,1].
void polynomial_mutation(std::vector<double>& genes, Rng& rng, double eta, double prob) {
  for (double& y : genes) {
    if (rng.uniform01() > prob) continue;
    const double r = rng.uniform01();
    const double mut_pow = 1.0 / (eta + 1.0);
    double deltaq;
    if (r <= 0.5) {
      const double xy = 1.0 - y;
      const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(xy, eta + 1.0);
      deltaq = std::pow(val, mut_pow) - 1.0;
    } else {
      const double xy = y;
      const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(xy, eta + 1.0);
      deltaq = 1.0 - std::pow(val, mut_pow);
    }
    y = std::clamp(y + deltaq, 0.0, 1.0);
  }
}

} // namespace

std::vector<Genome> make_offspring(const std::vector<Individual>& population, Rng& rng,
                                   const VariationParams& params) {
  const std::size_t n = population.size();
  const double pm = params.mutation_prob > 0.0
                        ? params.mutation_prob
                        : 1.0 / static_cast<double>(population.front().genome.coords.size());
  std::vector<Genome> offspring;
  offspring.reserve(n);
  while (offspring.size() < n) {
    const int a = tournament(population, rng);
    const int b = tournament(population, rng);
    Genome c1, c2;
    sbx_crossover(population[a].genome.coords, population[b].genome.coords, c1.coords, c2.coords,
                  rng, params.sbx_eta, params.sbx_prob);
    polynomial_mutation(c1.coords, rng, params.mutation_eta, pm);
    polynomial_mutation(c2.coords, rng, params.mutation_eta, pm);
    offspring.push_back(std::move(c1));
    if (offspring.size() < n) offspring.push_back(std::move(c2));
  }
  return offspring;
}

std::vector<Individual> environmental_selection(const std::vector<Individual>& candidates,
                                                std::size_t target_size) {
  const std::vector<std::vector<int>> fronts = non_dominated_sort(candidates);
  std::vector<Individual> selected;
  selected.reserve(target_size);

  for (std::size_t f = 0; f < fronts.size() && selected.size() < target_size; ++f) {
    const std::vector<int>& front = fronts[f];
    const std::vector<double> crowd = crowding_distance(candidates, front);

    std::vector<std::size_t> order(front.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (selected.size() + front.size() > target_size) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
        return front[a] < front[b];
      });
    }
    for (std::size_t i = 0; i < order.size() && selected.size() < target_size; ++i) {
      Individual ind = candidates[front[order[i]]];
      ind.rank = static_cast<int>(f);
      ind.crowding = crowd[order[i]];
      selected.push_back(std::move(ind));
    }
  }
  return selected;
}

CutShape genome_to_shape(const Genome& genome, const UnitCell& cell,
                         const std::array<Vec2, 2>& endpoints) {
  const int n = genome.n_points();
  if (n != 3 && n != 5 && n != 7)
    throw PreconditionViolation("genome_to_shape: n must be 3, 5 or 7");
  if (static_cast<int>(genome.coords.size()) != 2 * n)
    throw PreconditionViolation("genome_to_shape: malformed genome");
  for (double v : genome.coords)
    if (!(v >= 0.0 && v <= 1.0))
      throw PreconditionViolation("genome_to_shape: coordinate outside [0,1]");

  std::vector<Vec2> points;
  points.reserve(n);
  for (int k = 0; k < n; ++k)
    points.push_back({genome.coords[2 * k] * cell.width, genome.coords[2 * k + 1] * cell.height});
  return repair_ordering(points, endpoints, cell);
}

Genome shape_to_genome(const CutShape& shape) {
  Genome g;
  g.coords.reserve(shape.internal_points.size() * 2);
  for (const Vec2& p : shape.internal_points) {
    g.coords.push_back(p.x / shape.cell.width);
    g.coords.push_back(p.y / shape.cell.height);
  }
  return g;
}

Individual evaluate(const Genome& genome, const EvaluationSetup& setup) {
  Individual ind;
  ind.genome = genome;
  ind.feasible = false;
  ind.objectives = {0.0, 0.0}; // sentinel worst (both objectives maximized)
  try {
    const CutShape shape = genome_to_shape(genome, setup.cell, setup.endpoints);
    const ShapeMetrics metrics = compute_metrics(shape);
    if (metrics.max_aspect_ratio > setup.aspect_ratio_limit) return ind; // outlier filter

    const PeelTrace fwd =
        peel_simulate(shape, setup.material, PeelDirection::forward, setup.protocol);
    const PeelTrace rev =
        peel_simulate(shape, setup.material, PeelDirection::reverse, setup.protocol);
    const PeelResult result = adhesion_metrics(fwd, rev, setup.protocol.objective);

    ind.objectives.forward_energy = result.forward_energy;
    ind.objectives.ratio = result.energy_ratio;
    ind.reverse_energy = result.reverse_energy;
    ind.feasible = true;
  } catch (const DegenerateInput&) {
  } catch (const ResolutionTooCoarse&) {
  } catch (const NonConvergence&) {
  } catch (const IncompleteTrace&) {
  }
  return ind;
}

std::vector<Individual> ParetoArchive::pareto_front() const {
  std::vector<Individual> front;
  for (const Individual& a : evaluations) {
    if (!a.feasible) continue;
    bool is_dominated = false;
    for (const Individual& b : evaluations) {
      if (&a == &b) continue;
      if (dominates(b, a)) {
        is_dominated = true;
        break;
      }
    }
    if (!is_dominated) front.push_back(a);
  }
  return front;
}

std::vector<Individual> ParetoArchive::front_at_generation(int gen) const {
  std::vector<Individual> subset;
  for (const Individual& a : evaluations)
    if (a.generation <= gen) subset.push_back(a);
  std::vector<Individual> front;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (!subset[i].feasible) continue;
    bool is_dominated = false;
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (i != j && dominates(subset[j], subset[i])) {
        is_dominated = true;
        break;
      }
    if (!is_dominated) front.push_back(subset[i]);
  }
  return front;
}

double front_hypervolume(const std::vector<Individual>& front, std::array<double, 2> reference) {
  std::vector<std::array<double, 2>> points;
  points.reserve(front.size());
  for (const Individual& ind : front)
    if (ind.feasible) points.push_back({ind.objectives.forward_energy, ind.objectives.ratio});
  return hypervolume_2d(std::move(points), reference);
}

namespace {

std::string genome_key(const Genome& g) {
  std::string key(g.coords.size() * sizeof(double), '\0');
  std::memcpy(key.data(), g.coords.data(), key.size());
  return key;
}

// Evaluate a batch on `jobs` threads; results land at their input index so
// the outcome is independent of scheduling.
std::vector<Individual> evaluate_batch(const std::vector<Genome>& genomes,
                                       const Evaluator& evaluator, int jobs) {
  std::vector<Individual> results(genomes.size());
  if (jobs <= 1 || genomes.size() <= 1) {
    for (std::size_t i = 0; i < genomes.size(); ++i) results[i] = evaluator(genomes[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= genomes.size()) return;
      results[i] = evaluator(genomes[i]);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(genomes.size()));
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

} // namespace

ParetoArchive run_optimization(const OptimizationConfig& config, Evaluator evaluator,
                               EvalCallback on_eval) {
  if (config.n_points != 3 && config.n_points != 5 && config.n_points != 7)
    throw ConfigError("optimizer: n_points must be 3, 5 or 7");
  if (config.population < 2 || config.generations < 1)
    throw ConfigError("optimizer: population must be >= 2 and generations >= 1");

  std::unordered_map<std::string, Individual> cache;
  std::mutex cache_mutex;
  if (!evaluator) {
    const EvaluationSetup setup = config.setup;
    evaluator = [setup, &cache, &cache_mutex](const Genome& g) {
      const std::string key = genome_key(g);
      {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
      }
      Individual ind = evaluate(g, setup);
      std::lock_guard<std::mutex> lock(cache_mutex);
      return cache.emplace(key, std::move(ind)).first->second;
    };
  }

  Rng rng(config.seed);
  ParetoArchive archive;
  int eval_index = 0;

  auto archive_batch = [&](std::vector<Individual>& batch, int generation) {
    for (Individual& ind : batch) {
      ind.generation = generation;
      archive.evaluations.push_back(ind);
      if (on_eval) on_eval(archive.evaluations.back(), eval_index);
      ++eval_index;
    }
  };

  // Generation 1: uniform random population over [0,1]^(2n).
  std::vector<Genome> genomes(config.population);
  for (Genome& g : genomes) {
    g.coords.resize(2 * config.n_points);
    for (double& v : g.coords) v = rng.uniform01();
  }
  std::vector<Individual> population = evaluate_batch(genomes, evaluator, config.jobs);
  archive_batch(population, 1);
  population = environmental_selection(population, population.size());

  for (int gen = 2; gen <= config.generations; ++gen) {
    const std::vector<Genome> offspring_genomes = make_offspring(population, rng, config.variation);
    std::vector<Individual> offspring = evaluate_batch(offspring_genomes, evaluator, config.jobs);
    archive_batch(offspring, gen);

    std::vector<Individual> candidates = population;
    candidates.insert(candidates.end(), offspring.begin(), offspring.end());
    population = environmental_selection(candidates, config.population);
  }

  return archive;
}

} // namespace metapeel
