#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "searchathome/core/genome.hpp"
#include "searchathome/telemetry/telemetry.hpp"

namespace searchathome {

struct GenerationRecord {
  std::uint64_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::uint64_t evaluations_so_far = 0;
  std::int64_t wall_ms = 0;
  std::optional<TelemetrySnapshot> telemetry;
};

// Equality over the reproducible part of a record: timing and telemetry
// are host-dependent and excluded.
inline bool same_logical_record(const GenerationRecord& a, const GenerationRecord& b) {
  return a.generation == b.generation && a.best_fitness == b.best_fitness &&
         a.mean_fitness == b.mean_fitness && a.evaluations_so_far == b.evaluations_so_far;
}

struct ReplicateResult {
  std::uint64_t seed = 0;
  bool converged = false;
  std::uint64_t generations = 0;
  std::uint64_t total_evaluations = 0;
  std::int64_t total_wall_ms = 0;
  Genome best_genome;
  double best_fitness = 0.0;
  std::vector<GenerationRecord> trace;
  bool interrupted = false;
  std::optional<std::string> error;
};

inline bool same_logical_result(const ReplicateResult& a, const ReplicateResult& b) {
  if (a.seed != b.seed || a.converged != b.converged || a.generations != b.generations ||
      a.total_evaluations != b.total_evaluations || a.best_genome != b.best_genome ||
      a.best_fitness != b.best_fitness || a.trace.size() != b.trace.size() ||
      a.interrupted != b.interrupted || a.error != b.error) {
    return false;
  }
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    if (!same_logical_record(a.trace[i], b.trace[i])) return false;
  }
  return true;
}

// Per-run hooks that do not influence the search itself.
struct RunOptions {
  // Sampled onto every Nth record (0 disables).
  std::function<TelemetrySnapshot()> telemetry;
  std::uint64_t telemetry_every = 10;
  // Polled once per generation/window; a set flag ends the run early.
  const std::atomic<bool>* stop = nullptr;
  // Called after each record is appended.
  std::function<void(const GenerationRecord&)> on_record;
};

namespace engine_detail {

class Stopwatch {
 public:
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline bool stop_requested(const RunOptions& opts) {
  return opts.stop != nullptr && opts.stop->load(std::memory_order_relaxed);
}

inline void emit(ReplicateResult& result, GenerationRecord rec, const RunOptions& opts) {
  if (opts.telemetry && opts.telemetry_every > 0 && rec.generation % opts.telemetry_every == 0) {
    rec.telemetry = opts.telemetry();
  }
  result.trace.push_back(std::move(rec));
  if (opts.on_record) opts.on_record(result.trace.back());
}

}  // namespace engine_detail

}  // namespace searchathome
