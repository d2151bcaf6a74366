#pragma once

// (1+1)-online EA: one champion, one mutated challenger per evaluation
// window; the challenger replaces the champion when it scores no worse.
// The champion is not re-evaluated between windows.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "searchathome/core/operators.hpp"
#include "searchathome/engine/evaluator.hpp"
#include "searchathome/engine/result.hpp"

namespace searchathome {

namespace engine_detail {

// Mean fitness over `repeats` evaluations of the same genome.
inline double windowed_fitness(const Genome& g, std::uint64_t repeats, const Problem& problem,
                               Evaluator& evaluator) {
  const std::vector<Genome> batch(repeats, g);
  const auto evals = evaluator.evaluate(problem, batch);
  if (evals.size() != batch.size()) throw EvaluationError("evaluator dropped results");
  double sum = 0.0;
  for (const auto& e : evals) sum += e.fitness;
  return sum / static_cast<double>(repeats);
}

}  // namespace engine_detail

// Trace: record 0 holds the initial champion; record w (1..total_windows)
// holds the champion after window w, with mean_fitness the average of the
// champion and challenger scores compared in that window.
inline ReplicateResult one_plus_one_online_run(const Problem& problem,
                                               std::uint64_t total_windows,
                                               std::uint64_t window_evals, std::uint64_t seed,
                                               Evaluator& evaluator,
                                               std::optional<double> target = std::nullopt,
                                               const RunOptions& opts = {}) {
  if (total_windows < 1) throw std::invalid_argument("total_windows must be >= 1");
  if (window_evals < 1) throw std::invalid_argument("window_evals must be >= 1");
  if (!target) target = problem.target_fitness();
  const engine_detail::Stopwatch clock;
  ReplicateResult result;
  result.seed = seed;
  Rng rng(seed);

  try {
    Genome champion = random_genome(problem.spec(), rng);
    double champion_fitness =
        engine_detail::windowed_fitness(champion, window_evals, problem, evaluator);
    result.total_evaluations = window_evals;
    engine_detail::emit(result,
                        {0, champion_fitness, champion_fitness, result.total_evaluations,
                         clock.elapsed_ms(), std::nullopt},
                        opts);
    result.best_genome = champion;
    result.best_fitness = champion_fitness;

    for (std::uint64_t w = 1; w <= total_windows; ++w) {
      if (engine_detail::stop_requested(opts)) {
        result.interrupted = true;
        break;
      }
      Genome challenger = mutate_one_locus(champion, problem.spec(), rng);
      const double challenger_fitness =
          engine_detail::windowed_fitness(challenger, window_evals, problem, evaluator);
      result.total_evaluations += window_evals;
      const double compared_mean = 0.5 * (champion_fitness + challenger_fitness);
      if (challenger_fitness <= champion_fitness) {
        champion = std::move(challenger);
        champion_fitness = challenger_fitness;
      }
      result.generations = w;
      result.best_genome = champion;
      result.best_fitness = champion_fitness;
      engine_detail::emit(result,
                          {w, champion_fitness, compared_mean, result.total_evaluations,
                           clock.elapsed_ms(), std::nullopt},
                          opts);
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.converged = !result.error && !result.trace.empty() && target &&
                     result.best_fitness <= *target;
  result.total_wall_ms = clock.elapsed_ms();
  return result;
}

}  // namespace searchathome
