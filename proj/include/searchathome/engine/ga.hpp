#pragma once

// Generational GA with weighted-fitness (roulette) parent selection,
// single-point crossover, single-locus mutation and elitism.
//
// Draw order per offspring pair, fixed regardless of outcome:
//   select, select, crossover coin, [cut], mutate coin, [locus, value],
//   mutate coin, [locus, value]
// Bracketed draws happen only when the preceding coin fires.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "searchathome/core/operators.hpp"
#include "searchathome/engine/evaluator.hpp"
#include "searchathome/engine/result.hpp"
#include "searchathome/problems/problem.hpp"

namespace searchathome {

struct GAConfig {
  std::uint64_t population_size = 500;
  double crossover_rate = 0.5;
  double mutation_rate = 1.0;
  std::uint64_t max_generations = 500000;
  std::uint64_t elitism = 1;
  // Falls back to Problem::target_fitness() when unset.
  std::optional<double> target_fitness;
  // Optional evaluation budget; a generation that would exceed it is not run.
  std::optional<std::uint64_t> max_evaluations;

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
      throw std::invalid_argument("crossover_rate must be in [0, 1]");
    }
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
      throw std::invalid_argument("mutation_rate must be in [0, 1]");
    }
    if (elitism >= population_size) {
      throw std::invalid_argument("elitism must be < population_size");
    }
  }
};

// Roulette wheel over w_i = 1 / (1 + f_i): lower fitness, larger slice.
class WeightedSelector {
 public:
  explicit WeightedSelector(std::span<const double> fitnesses) {
    if (fitnesses.empty()) throw std::invalid_argument("selection over an empty population");
    cumulative_.reserve(fitnesses.size());
    double total = 0.0;
    for (const double f : fitnesses) {
      total += 1.0 / (1.0 + f);
      cumulative_.push_back(total);
    }
  }

  // One uniform draw.
  std::size_t select(Rng& rng) const {
    const double r = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

inline std::size_t select_parent_weighted(std::span<const double> fitnesses, Rng& rng) {
  return WeightedSelector(fitnesses).select(rng);
}

namespace engine_detail {

inline std::vector<double> member_fitness(const Population& pop) {
  std::vector<double> f;
  f.reserve(pop.members.size());
  for (const auto& m : pop.members) {
    if (!m.fitness) throw std::invalid_argument("population contains unevaluated members");
    f.push_back(*m.fitness);
  }
  return f;
}

// Evaluates members [from, end) in order.
inline void evaluate_tail(Population& pop, std::size_t from, const Problem& problem,
                          Evaluator& evaluator) {
  if (from >= pop.members.size()) return;
  std::vector<Genome> batch;
  batch.reserve(pop.members.size() - from);
  for (std::size_t i = from; i < pop.members.size(); ++i) batch.push_back(pop.members[i].genome);
  auto evals = evaluator.evaluate(problem, batch);
  if (evals.size() != batch.size()) {
    throw EvaluationError("evaluator returned " + std::to_string(evals.size()) +
                          " results for a batch of " + std::to_string(batch.size()));
  }
  for (std::size_t k = 0; k < evals.size(); ++k) {
    auto& m = pop.members[from + k];
    m.fitness = evals[k].fitness;
    m.eval_ms = evals[k].eval_ms;
    m.evaluated_by = std::move(evals[k].node);
  }
}

inline GenerationRecord summarize(const Population& pop, std::uint64_t evaluations,
                                  std::int64_t wall_ms) {
  GenerationRecord rec;
  rec.generation = pop.generation;
  rec.best_fitness = *pop.members.front().fitness;
  double sum = 0.0;
  for (const auto& m : pop.members) {
    rec.best_fitness = std::min(rec.best_fitness, *m.fitness);
    sum += *m.fitness;
  }
  rec.mean_fitness = sum / static_cast<double>(pop.members.size());
  rec.evaluations_so_far = evaluations;
  rec.wall_ms = wall_ms;
  return rec;
}

inline std::size_t best_index(const Population& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.members.size(); ++i) {
    if (*pop.members[i].fitness < *pop.members[best].fitness) best = i;
  }
  return best;
}

}  // namespace engine_detail

struct GAStep {
  Population population;
  GenerationRecord record;
};

// Breeds, evaluates and summarizes one generation. `evaluations_so_far`
// is the running total before this step; the record carries the new total.
inline GAStep ga_step(const Population& pop, const GAConfig& config, const Problem& problem,
                      Evaluator& evaluator, Rng& rng, std::uint64_t evaluations_so_far = 0,
                      std::int64_t wall_ms = 0) {
  const auto fitness = engine_detail::member_fitness(pop);
  const auto& spec = problem.spec();
  const std::size_t size = static_cast<std::size_t>(config.population_size);

  Population next;
  next.generation = pop.generation + 1;
  next.members.reserve(size + 1);

  std::vector<std::size_t> order(pop.members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
  const std::size_t elites = std::min<std::size_t>(config.elitism, order.size());
  for (std::size_t k = 0; k < elites && next.members.size() < size; ++k) {
    next.members.push_back(pop.members[order[k]]);
  }
  const std::size_t first_new = next.members.size();

  const WeightedSelector selector(fitness);
  const bool can_cross = spec.length() >= 2;
  while (next.members.size() < size) {
    const auto& a = pop.members[selector.select(rng)].genome;
    const auto& b = pop.members[selector.select(rng)].genome;
    Genome c1, c2;
    if (rng.uniform() < config.crossover_rate && can_cross) {
      std::tie(c1, c2) = single_point_crossover(a, b, rng);
    } else {
      c1 = a;
      c2 = b;
    }
    for (Genome* child : {&c1, &c2}) {
      if (rng.uniform() < config.mutation_rate) mutate_one_locus_in_place(*child, spec, rng);
    }
    next.members.push_back({std::move(c1), {}, {}, {}});
    next.members.push_back({std::move(c2), {}, {}, {}});
  }
  next.members.resize(size);

  engine_detail::evaluate_tail(next, first_new, problem, evaluator);
  const std::uint64_t evaluated = evaluations_so_far + (size - first_new);
  auto record = engine_detail::summarize(next, evaluated, wall_ms);
  return {std::move(next), std::move(record)};
}

inline ReplicateResult ga_run(const GAConfig& config, const Problem& problem,
                              Evaluator& evaluator, std::uint64_t seed,
                              const RunOptions& opts = {}) {
  config.validate();
  const engine_detail::Stopwatch clock;
  const auto target = config.target_fitness ? config.target_fitness : problem.target_fitness();
  ReplicateResult result;
  result.seed = seed;
  Rng rng(seed);

  auto reached = [&](double best) { return target.has_value() && best <= *target; };
  auto finish = [&](const Population& pop) {
    const auto& best = pop.members[engine_detail::best_index(pop)];
    result.best_genome = best.genome;
    result.best_fitness = *best.fitness;
    result.generations = pop.generation;
    result.converged = reached(result.best_fitness);
    result.total_wall_ms = clock.elapsed_ms();
  };

  Population pop;
  try {
    pop.members.reserve(config.population_size);
    for (std::uint64_t i = 0; i < config.population_size; ++i) {
      pop.members.push_back({random_genome(problem.spec(), rng), {}, {}, {}});
    }
    engine_detail::evaluate_tail(pop, 0, problem, evaluator);
    result.total_evaluations = config.population_size;
    engine_detail::emit(result,
                        engine_detail::summarize(pop, result.total_evaluations, clock.elapsed_ms()),
                        opts);

    const std::uint64_t per_generation =
        config.population_size - std::min(config.elitism, config.population_size);
    while (!reached(result.trace.back().best_fitness) && pop.generation < config.max_generations) {
      if (config.max_evaluations &&
          result.total_evaluations + per_generation > *config.max_evaluations) {
        break;
      }
      if (engine_detail::stop_requested(opts)) {
        result.interrupted = true;
        break;
      }
      auto step = ga_step(pop, config, problem, evaluator, rng, result.total_evaluations,
                          clock.elapsed_ms());
      pop = std::move(step.population);
      result.total_evaluations = step.record.evaluations_so_far;
      step.record.wall_ms = clock.elapsed_ms();
      engine_detail::emit(result, std::move(step.record), opts);
    }
  } catch (const std::exception& e) {
    result.error = e.what();
    result.total_wall_ms = clock.elapsed_ms();
    if (!pop.members.empty() && pop.members.back().fitness) {
      finish(pop);
      result.converged = false;
    }
    return result;
  }
  finish(pop);
  return result;
}

}  // namespace searchathome
