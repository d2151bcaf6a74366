#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "searchathome/dist/coordinator.hpp"
#include "searchathome/dist/tcp.hpp"
#include "searchathome/engine/ga.hpp"
#include "searchathome/engine/online_ea.hpp"
#include "searchathome/engine/random_search.hpp"
#include "searchathome/harness/config.hpp"
#include "searchathome/harness/results.hpp"

namespace searchathome::harness {

struct ResultFiles {
  std::vector<std::filesystem::path> traces;
  std::filesystem::path summary;
  nlohmann::json summary_json;
  std::vector<ReplicateResult> results;
};

class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunControl {
  const std::atomic<bool>* stop = nullptr;
  std::function<TelemetrySnapshot()> telemetry = [] { return sample_host(); };
  // Overrides the evaluator selected by the config (tests, embedding).
  Evaluator* evaluator = nullptr;
  std::ostream* log = nullptr;
};

inline std::string trace_file_name(std::uint64_t replicate) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "trace_replicate_%03llu.csv",
                static_cast<unsigned long long>(replicate));
  return buf;
}

inline ReplicateResult run_replicate(const ExperimentConfig& config, const Problem& problem,
                                     Evaluator& evaluator, std::uint64_t replicate,
                                     const RunOptions& opts) {
  const auto seed = config.seed_for(replicate);
  switch (config.algorithm) {
    case Algorithm::kGA:
      return ga_run(config.ga, problem, evaluator, seed, opts);
    case Algorithm::kRandom:
      return random_search_run(config.random_budget, problem, evaluator, seed,
                               config.ga.population_size, config.ga.target_fitness, opts);
    case Algorithm::kOnePlusOne:
      return one_plus_one_online_run(problem, config.windows, config.window_evals, seed,
                                     evaluator, config.ga.target_fitness, opts);
  }
  throw std::logic_error("unhandled algorithm");
}

inline nlohmann::json build_summary(const ExperimentConfig& config,
                                    const std::vector<ReplicateResult>& results) {
  nlohmann::json reps = nlohmann::json::array();
  std::vector<double> gens, best, wall, evals;
  std::uint64_t converged = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    reps.push_back(replicate_entry(i + 1, r));
    gens.push_back(static_cast<double>(r.generations));
    best.push_back(r.best_fitness);
    wall.push_back(static_cast<double>(r.total_wall_ms));
    evals.push_back(static_cast<double>(r.total_evaluations));
    converged += r.converged ? 1 : 0;
  }
  return {{"experiment", config_to_json(config)},
          {"replicates", reps},
          {"stats",
           {{"converged_count", converged},
            {"generations", summary_stats(gens)},
            {"best_fitness", summary_stats(best)},
            {"total_evaluations", summary_stats(evals)},
            {"total_wall_ms", summary_stats(wall)}}}};
}

// Runs every replicate, writing one trace CSV per replicate and a summary
// JSON into config.output_dir.
inline ResultFiles run_experiment(const ExperimentConfig& config, const RunControl& control = {}) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec || !std::filesystem::is_directory(config.output_dir)) {
    throw RuntimeError("cannot create output directory '" + config.output_dir.string() + "'");
  }
  const ProblemPtr problem = problem_from_descriptor(config.problem);

  std::unique_ptr<dist::Coordinator> coordinator;
  std::unique_ptr<dist::TcpListener> listener;
  std::unique_ptr<Evaluator> owned_evaluator;
  Evaluator* evaluator = control.evaluator;
  if (!evaluator && config.evaluator.distributed) {
    dist::CoordinatorOptions copts;
    copts.chunk_size = config.evaluator.chunk_size;
    copts.task_timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(config.evaluator.timeout_s * 1000.0));
    copts.no_worker_grace = std::chrono::milliseconds(
        static_cast<std::int64_t>(config.evaluator.grace_s * 1000.0));
    coordinator = std::make_unique<dist::Coordinator>(copts);
    coordinator->register_problem(*problem);
    try {
      const auto [host, port] = dist::parse_address(config.evaluator.listen);
      listener = std::make_unique<dist::TcpListener>(
          host, port, [c = coordinator.get()](auto s) { c->add_connection(std::move(s)); });
    } catch (const std::exception& e) {
      throw RuntimeError(std::string("distributed evaluator: ") + e.what());
    }
    if (control.log) {
      *control.log << "waiting for " << config.evaluator.min_workers << " worker(s) on port "
                   << listener->port() << "\n";
    }
    const auto wait = std::chrono::milliseconds(
        static_cast<std::int64_t>(config.evaluator.worker_wait_s * 1000.0));
    if (!coordinator->wait_for_workers(config.evaluator.min_workers, wait)) {
      throw RuntimeError("distributed evaluator: fewer than " +
                         std::to_string(config.evaluator.min_workers) +
                         " worker(s) connected in time");
    }
    owned_evaluator = std::make_unique<dist::DistributedEvaluator>(*coordinator);
    evaluator = owned_evaluator.get();
  }
  if (!evaluator) {
    owned_evaluator = std::make_unique<LocalEvaluator>();
    evaluator = owned_evaluator.get();
  }

  ResultFiles files;
  files.results.resize(config.replicates);
  for (std::uint64_t r = 1; r <= config.replicates; ++r) {
    files.traces.push_back(config.output_dir / trace_file_name(r));
  }

  std::mutex log_mu;
  auto run_one = [&](std::uint64_t r, Evaluator& ev) {
    TraceWriter trace(files.traces[r - 1], r);
    RunOptions opts;
    opts.telemetry = control.telemetry;
    opts.telemetry_every = config.telemetry_every_n_generations;
    opts.stop = control.stop;
    opts.on_record = [&trace](const GenerationRecord& rec) { trace.write(rec); };
    files.results[r - 1] = run_replicate(config, *problem, ev, r, opts);
    trace.flush();
    if (control.log) {
      const auto& res = files.results[r - 1];
      std::lock_guard lock(log_mu);
      *control.log << "replicate " << r << " seed " << res.seed << ": "
                   << (res.converged ? "converged" : "not converged") << " after "
                   << res.generations << " generation(s), best " << res.best_fitness << ", "
                   << res.total_wall_ms << " ms" << (res.error ? " [error: " + *res.error + "]" : "")
                   << "\n";
    }
  };

  if (config.parallel_replicates && !control.evaluator) {
    std::atomic<std::uint64_t> next{1};
    const auto threads = std::max(1U, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::uint64_t>(threads, config.replicates); ++t) {
      pool.emplace_back([&] {
        LocalEvaluator local;
        for (auto r = next++; r <= config.replicates; r = next++) run_one(r, local);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (std::uint64_t r = 1; r <= config.replicates; ++r) {
      if (control.stop && control.stop->load()) {
        files.results.resize(r - 1);
        files.traces.resize(r - 1);
        break;
      }
      run_one(r, *evaluator);
    }
  }
  if (coordinator) coordinator->shutdown();

  files.summary_json = build_summary(config, files.results);
  files.summary = config.output_dir / "summary.json";
  std::ofstream out(files.summary, std::ios::trunc);
  if (!out) throw RuntimeError("cannot write '" + files.summary.string() + "'");
  out << files.summary_json.dump(2) << '\n';
  return files;
}

}  // namespace searchathome::harness
