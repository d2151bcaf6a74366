#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "searchathome/core/genome.hpp"
#include "searchathome/problems/problem.hpp"

namespace searchathome {

struct Evaluation {
  double fitness = 0.0;
  double eval_ms = 0.0;
  std::string node;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scores an ordered batch of genomes for one problem. Results come back in
// batch order. Implementations may spread the work out but must not reorder.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual std::vector<Evaluation> evaluate(const Problem& problem,
                                           std::span<const Genome> batch) = 0;
};

class LocalEvaluator final : public Evaluator {
 public:
  explicit LocalEvaluator(std::string node = "local") : node_(std::move(node)) {}

  std::vector<Evaluation> evaluate(const Problem& problem,
                                   std::span<const Genome> batch) override {
    std::vector<Evaluation> out;
    out.reserve(batch.size());
    for (const auto& g : batch) {
      const auto t0 = std::chrono::steady_clock::now();
      const double f = problem.evaluate(g);
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
      out.push_back({f, dt.count(), node_});
    }
    return out;
  }

 private:
  std::string node_;
};

// Passes batches through to another evaluator and counts genomes scored.
class CountingEvaluator final : public Evaluator {
 public:
  explicit CountingEvaluator(Evaluator& inner) : inner_(inner) {}

  std::vector<Evaluation> evaluate(const Problem& problem,
                                   std::span<const Genome> batch) override {
    auto out = inner_.evaluate(problem, batch);
    count_ += batch.size();
    ++batches_;
    return out;
  }

  std::uint64_t count() const { return count_; }
  std::uint64_t batches() const { return batches_; }

 private:
  Evaluator& inner_;
  std::atomic<std::uint64_t> count_{0};
  std::atomic<std::uint64_t> batches_{0};
};

inline std::vector<double> fitness_values(const std::vector<Evaluation>& evals) {
  std::vector<double> f;
  f.reserve(evals.size());
  for (const auto& e : evals) f.push_back(e.fitness);
  return f;
}

}  // namespace searchathome
