#pragma once

// Command-line front end: run, worker, compare, plot, telemetry.
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "searchathome/dist/tcp.hpp"
#include "searchathome/dist/worker.hpp"
#include "searchathome/harness/boxplot_svg.hpp"
#include "searchathome/harness/compare.hpp"
#include "searchathome/harness/experiment.hpp"

namespace searchathome::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

inline constexpr const char* kCoordinatorEnv = "SEARCHATHOME_COORDINATOR";

struct CliContext {
  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  const std::atomic<bool>* stop = nullptr;
  // Worker reconnect schedule; tests shorten it.
  dist::BackoffPolicy backoff{};
};

inline int cmd_run(const std::string& config_path, const std::string& output_dir,
                   bool parallel, bool quiet, const CliContext& ctx) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    ctx.err << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (parallel) {
    if (config.evaluator.distributed) {
      ctx.err << "config error: --parallel-replicates requires the local evaluator\n";
      return kExitUsage;
    }
    config.parallel_replicates = true;
  }
  try {
    RunControl control;
    control.stop = ctx.stop;
    if (!quiet) control.log = &ctx.out;
    const auto files = run_experiment(config, control);
    ctx.out << "summary: " << files.summary.string() << "\n";
    const bool interrupted = ctx.stop && ctx.stop->load();
    return interrupted ? kExitRuntime : kExitOk;
  } catch (const std::exception& e) {
    ctx.err << "run failed: " << e.what() << "\n";
    return kExitRuntime;
  }
}

inline int cmd_worker(std::string coordinator, const std::string& name, int max_attempts,
                      double heartbeat_s, const CliContext& ctx) {
  if (coordinator.empty()) {
    if (const char* env = std::getenv(kCoordinatorEnv)) coordinator = env;
  }
  if (coordinator.empty()) {
    ctx.err << "usage: worker needs --coordinator HOST:PORT or " << kCoordinatorEnv << "\n";
    return kExitUsage;
  }
  std::string host;
  std::uint16_t port = 0;
  try {
    std::tie(host, port) = dist::parse_address(coordinator);
  } catch (const std::exception& e) {
    ctx.err << "usage: bad coordinator address '" << coordinator << "'\n";
    return kExitUsage;
  }
  dist::WorkerOptions opts;
  if (!name.empty()) opts.name = name;
  else {
    char buf[256] = {};
    opts.name = ::gethostname(buf, sizeof buf - 1) == 0 ? buf : "worker";
  }
  opts.heartbeat_period =
      std::chrono::milliseconds(static_cast<std::int64_t>(heartbeat_s * 1000.0));
  opts.stop = ctx.stop;
  auto backoff = ctx.backoff;
  if (max_attempts >= 0) backoff.max_attempts = max_attempts;
  const int code = dist::worker_serve([&] { return dist::tcp_connect(host, port); },
                                      default_problem_registry(), opts, backoff);
  if (code != 0) ctx.err << "coordinator " << coordinator << " unreachable; giving up\n";
  return code == 0 ? kExitOk : kExitRuntime;
}

inline int cmd_compare(const std::string& a_path, const std::string& b_path,
                       const std::string& metric, double alpha, const std::string& json_out,
                       const CliContext& ctx) {
  if (!kComparableMetrics.count(metric)) {
    ctx.err << "usage: unsupported metric '" << metric << "'\n";
    return kExitUsage;
  }
  try {
    const auto report = compare(load_summary(a_path), load_summary(b_path), metric, alpha);
    ctx.out << report.text();
    if (!json_out.empty()) {
      std::ofstream out(json_out, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write '" + json_out + "'");
      out << report.json().dump(2) << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    ctx.err << "compare failed: " << e.what() << "\n";
    return kExitRuntime;
  }
}

inline int cmd_plot(const std::vector<std::string>& summaries, const std::string& metric,
                    const std::string& output, const std::string& title, const CliContext& ctx) {
  if (summaries.empty()) {
    ctx.err << "usage: plot needs at least one summary file\n";
    return kExitUsage;
  }
  if (!kComparableMetrics.count(metric)) {
    ctx.err << "usage: unsupported metric '" << metric << "'\n";
    return kExitUsage;
  }
  try {
    std::vector<stats::SampleSet> sets;
    for (const auto& path : summaries) {
      const auto s = load_summary(path);
      sets.push_back({summary_label(s, path), metric_values(s, metric)});
    }
    emit_boxplot_svg(sets, output, title.empty() ? metric : title);
    ctx.out << "wrote " << output << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    ctx.err << "plot failed: " << e.what() << "\n";
    return kExitRuntime;
  }
}

inline int cmd_telemetry(const CliContext& ctx) {
  ctx.out << searchathome::to_json(sample_host()).dump(2) << "\n";
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, const CliContext& ctx = {}) {
  CLI::App app{"Seed-reproducible evolutionary search on one or many nodes", "searchathome"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  bool parallel = false, quiet = false;
  auto* run = app.add_subcommand("run", "Run all replicates of an experiment");
  run->add_option("-c,--config", config_path, "Experiment JSON config")->required();
  run->add_option("-o,--output-dir", output_dir, "Override the config's output_dir");
  run->add_flag("--parallel-replicates", parallel, "Run replicates concurrently (local only)");
  run->add_flag("-q,--quiet", quiet, "Only print the summary path");

  std::string coordinator, worker_name;
  int max_attempts = -1;
  double heartbeat_s = 5.0;
  auto* worker = app.add_subcommand("worker", "Serve fitness evaluations for a coordinator");
  worker->add_option("--coordinator", coordinator,
                     std::string("HOST[:PORT]; defaults to $") + kCoordinatorEnv);
  worker->add_option("--name", worker_name, "Worker name (default: hostname)");
  worker->add_option("--max-attempts", max_attempts, "Failed connects tolerated before exit");
  worker->add_option("--heartbeat-s", heartbeat_s, "Heartbeat period in seconds")
      ->check(CLI::PositiveNumber);

  std::string a_path, b_path, metric = "generations", json_out;
  double alpha = 0.001;
  auto* cmp = app.add_subcommand("compare", "Mann-Whitney U and A12 between two summaries");
  cmp->add_option("a", a_path, "First summary.json")->required();
  cmp->add_option("b", b_path, "Second summary.json")->required();
  cmp->add_option("-m,--metric", metric, "generations | best_fitness | total_evaluations | total_wall_ms");
  cmp->add_option("--alpha", alpha, "Significance threshold")->check(CLI::Range(0.0, 1.0));
  cmp->add_option("--json", json_out, "Also write the report as JSON");

  std::vector<std::string> summaries;
  std::string plot_out = "boxplot.svg", title, plot_metric = "generations";
  auto* plot = app.add_subcommand("plot", "SVG boxplot of a metric across summaries");
  plot->add_option("summaries", summaries, "summary.json files")->required();
  plot->add_option("-m,--metric", plot_metric, "generations | best_fitness | total_evaluations | total_wall_ms");
  plot->add_option("-o,--output", plot_out, "Output SVG path");
  plot->add_option("--title", title, "Plot title");

  auto* tel = app.add_subcommand("telemetry", "Print one host telemetry snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    ctx.out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    ctx.err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (*run) return cmd_run(config_path, output_dir, parallel, quiet, ctx);
  if (*worker) return cmd_worker(coordinator, worker_name, max_attempts, heartbeat_s, ctx);
  if (*cmp) return cmd_compare(a_path, b_path, metric, alpha, json_out, ctx);
  if (*plot) return cmd_plot(summaries, plot_metric, plot_out, title, ctx);
  if (*tel) return cmd_telemetry(ctx);
  return kExitUsage;
}

}  // namespace searchathome::harness
