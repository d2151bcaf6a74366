#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "searchathome/core/operators.hpp"
#include "searchathome/engine/evaluator.hpp"
#include "searchathome/engine/result.hpp"

namespace searchathome {

// Uniform sampling of `budget` independent genomes. Samples are drawn and
// scored in blocks of `block_size` (a GA population's worth), one trace
// record per block.
inline ReplicateResult random_search_run(std::uint64_t budget, const Problem& problem,
                                         Evaluator& evaluator, std::uint64_t seed,
                                         std::uint64_t block_size = 500,
                                         std::optional<double> target = std::nullopt,
                                         const RunOptions& opts = {}) {
  if (budget < 1) throw std::invalid_argument("random search budget must be >= 1");
  if (block_size < 1) throw std::invalid_argument("random search block size must be >= 1");
  if (!target) target = problem.target_fitness();
  const engine_detail::Stopwatch clock;
  ReplicateResult result;
  result.seed = seed;
  Rng rng(seed);
  bool have_best = false;

  try {
    std::vector<Genome> block;
    std::uint64_t block_index = 0;
    while (result.total_evaluations < budget) {
      if (engine_detail::stop_requested(opts)) {
        result.interrupted = true;
        break;
      }
      const auto n = std::min(block_size, budget - result.total_evaluations);
      block.clear();
      for (std::uint64_t i = 0; i < n; ++i) block.push_back(random_genome(problem.spec(), rng));
      const auto evals = evaluator.evaluate(problem, block);
      if (evals.size() != block.size()) throw EvaluationError("evaluator dropped results");
      double sum = 0.0;
      for (std::size_t i = 0; i < evals.size(); ++i) {
        sum += evals[i].fitness;
        if (!have_best || evals[i].fitness < result.best_fitness) {
          result.best_fitness = evals[i].fitness;
          result.best_genome = block[i];
          have_best = true;
        }
      }
      result.total_evaluations += n;
      GenerationRecord rec;
      rec.generation = block_index++;
      rec.best_fitness = result.best_fitness;
      rec.mean_fitness = sum / static_cast<double>(n);
      rec.evaluations_so_far = result.total_evaluations;
      rec.wall_ms = clock.elapsed_ms();
      engine_detail::emit(result, std::move(rec), opts);
    }
    result.generations = block_index;
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.converged = !result.error && have_best && target && result.best_fitness <= *target;
  result.total_wall_ms = clock.elapsed_ms();
  return result;
}

}  // namespace searchathome
