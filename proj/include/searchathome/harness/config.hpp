#pragma once

// Experiment configuration, loaded from a strict JSON document. Unknown keys
// are rejected by name; absent keys take the defaults below.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "searchathome/engine/ga.hpp"
#include "searchathome/problems/factory.hpp"

namespace searchathome::harness {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Algorithm { kGA, kRandom, kOnePlusOne };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kGA: return "ga";
    case Algorithm::kRandom: return "random";
    case Algorithm::kOnePlusOne: return "one-plus-one";
  }
  return "?";
}

struct EvaluatorConfig {
  bool distributed = false;
  std::string listen = "0.0.0.0:7171";
  std::size_t chunk_size = 50;
  double timeout_s = 30.0;
  std::size_t min_workers = 1;
  double worker_wait_s = 60.0;
  double grace_s = 10.0;
};

struct ExperimentConfig {
  std::string label;
  nlohmann::json problem;  // problem descriptor, see problem_from_descriptor
  Algorithm algorithm = Algorithm::kGA;
  GAConfig ga;
  std::uint64_t random_budget = 250000;
  std::uint64_t windows = 200;
  std::uint64_t window_evals = 1;
  std::uint64_t replicates = 25;
  std::uint64_t seed_base = 0;
  EvaluatorConfig evaluator;
  std::filesystem::path output_dir = "results";
  std::uint64_t telemetry_every_n_generations = 10;
  bool parallel_replicates = false;

  std::uint64_t seed_for(std::uint64_t replicate) const { return seed_base + replicate; }
};

namespace config_detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                           const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(prefix + key, "unknown key");
  }
}

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path, "wrong type");
  }
}

inline std::uint64_t get_count(const json& obj, const std::string& key, const std::string& path,
                               std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(path, "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline double get_real(const json& obj, const std::string& key, const std::string& path,
                       double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  return v.get<double>();
}

inline json problem_descriptor(const json& j) {
  const auto name = get_field<std::string>(j, "problem", "problem", "");
  if (name == "string-search") {
    json d = {{"problem", "string-search"}};
    d["target"] = get_field<std::string>(j, "target", "target", std::string(kSymposiumTarget));
    if (j.contains("backends") || j.contains("traffic")) {
      throw ConfigError(j.contains("backends") ? "backends" : "traffic",
                        "only valid for problem lb-sim");
    }
    return d;
  }
  if (name == "lb-sim") {
    if (j.contains("target")) throw ConfigError("target", "only valid for problem string-search");
    json d = {{"problem", "lb-sim"}};
    if (j.contains("backends")) {
      const auto& bs = j.at("backends");
      if (!bs.is_array() || bs.empty()) throw ConfigError("backends", "must be a non-empty array");
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const std::string path = "backends[" + std::to_string(i) + "]";
        if (!bs[i].is_object()) throw ConfigError(path, "must be an object");
        reject_unknown(bs[i], {"capacity_rps", "base_latency_ms"}, path + ".");
        if (!bs[i].contains("capacity_rps") || !bs[i].contains("base_latency_ms")) {
          throw ConfigError(path, "needs capacity_rps and base_latency_ms");
        }
      }
      d["backends"] = bs;
    }
    if (j.contains("traffic")) {
      const auto& t = j.at("traffic");
      if (!t.is_object()) throw ConfigError("traffic", "must be an object");
      reject_unknown(t, {"concurrent_connections", "duration_s", "requests_per_connection_per_s"},
                     "traffic.");
      d["traffic"] = t;
    }
    return d;
  }
  if (name.empty()) throw ConfigError("problem", "required (string-search or lb-sim)");
  throw ConfigError("problem", "unknown problem '" + name + "'");
}

}  // namespace config_detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using namespace config_detail;
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  reject_unknown(j,
                 {"label", "problem", "target", "backends", "traffic", "algorithm",
                  "population_size", "crossover_rate", "mutation_rate", "max_generations",
                  "elitism", "target_fitness", "max_evaluations", "budget", "windows",
                  "window_evals", "replicates", "seed_base", "evaluator", "output_dir",
                  "telemetry_every_n_generations", "parallel_replicates"},
                 "");
  ExperimentConfig c;
  c.problem = problem_descriptor(j);
  try {
    problem_from_descriptor(c.problem);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem", e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("problem", e.what());
  }

  const auto algo = get_field<std::string>(j, "algorithm", "algorithm", "");
  if (algo == "ga") c.algorithm = Algorithm::kGA;
  else if (algo == "random") c.algorithm = Algorithm::kRandom;
  else if (algo == "one-plus-one") c.algorithm = Algorithm::kOnePlusOne;
  else if (algo.empty()) throw ConfigError("algorithm", "required (ga, random or one-plus-one)");
  else throw ConfigError("algorithm", "unknown algorithm '" + algo + "'");

  c.label = get_field<std::string>(j, "label", "label",
                                   c.problem.at("problem").get<std::string>() + "/" + algo);

  c.ga.population_size = get_count(j, "population_size", "population_size", 500);
  c.ga.crossover_rate = get_real(j, "crossover_rate", "crossover_rate", 0.5);
  c.ga.mutation_rate = get_real(j, "mutation_rate", "mutation_rate", 1.0);
  c.ga.max_generations = get_count(j, "max_generations", "max_generations", 500000);
  c.ga.elitism = get_count(j, "elitism", "elitism", 1);
  if (j.contains("target_fitness")) {
    c.ga.target_fitness = get_real(j, "target_fitness", "target_fitness", 0.0);
  }
  if (j.contains("max_evaluations")) {
    c.ga.max_evaluations = get_count(j, "max_evaluations", "max_evaluations", 0);
  }
  if (c.ga.population_size < 2) throw ConfigError("population_size", "must be >= 2");
  if (!(c.ga.crossover_rate >= 0 && c.ga.crossover_rate <= 1)) {
    throw ConfigError("crossover_rate", "must be in [0, 1]");
  }
  if (!(c.ga.mutation_rate >= 0 && c.ga.mutation_rate <= 1)) {
    throw ConfigError("mutation_rate", "must be in [0, 1]");
  }
  if (c.ga.elitism >= c.ga.population_size) {
    throw ConfigError("elitism", "must be less than population_size");
  }

  c.random_budget = get_count(j, "budget", "budget", 250000);
  if (c.random_budget < 1) throw ConfigError("budget", "must be >= 1");
  c.windows = get_count(j, "windows", "windows", 200);
  if (c.windows < 1) throw ConfigError("windows", "must be >= 1");
  c.window_evals = get_count(j, "window_evals", "window_evals", 1);
  if (c.window_evals < 1) throw ConfigError("window_evals", "must be >= 1");

  c.replicates = get_count(j, "replicates", "replicates", 25);
  if (c.replicates < 1) throw ConfigError("replicates", "must be >= 1");
  c.seed_base = get_count(j, "seed_base", "seed_base", 0);
  c.output_dir = get_field<std::string>(j, "output_dir", "output_dir", "results");
  c.telemetry_every_n_generations = get_count(j, "telemetry_every_n_generations",
                                              "telemetry_every_n_generations", 10);
  c.parallel_replicates = get_field<bool>(j, "parallel_replicates", "parallel_replicates", false);

  if (j.contains("evaluator")) {
    const auto& e = j.at("evaluator");
    if (e.is_string()) {
      const auto type = e.get<std::string>();
      if (type != "local" && type != "distributed") {
        throw ConfigError("evaluator", "must be local or distributed");
      }
      c.evaluator.distributed = type == "distributed";
    } else if (e.is_object()) {
      reject_unknown(e,
                     {"type", "listen", "chunk_size", "timeout_s", "min_workers", "worker_wait_s",
                      "grace_s"},
                     "evaluator.");
      const auto type = get_field<std::string>(e, "type", "evaluator.type", "local");
      if (type != "local" && type != "distributed") {
        throw ConfigError("evaluator.type", "must be local or distributed");
      }
      c.evaluator.distributed = type == "distributed";
      c.evaluator.listen = get_field<std::string>(e, "listen", "evaluator.listen", c.evaluator.listen);
      c.evaluator.chunk_size = get_count(e, "chunk_size", "evaluator.chunk_size", 50);
      if (c.evaluator.chunk_size < 1) throw ConfigError("evaluator.chunk_size", "must be >= 1");
      c.evaluator.timeout_s = get_real(e, "timeout_s", "evaluator.timeout_s", 30.0);
      if (!(c.evaluator.timeout_s > 0)) throw ConfigError("evaluator.timeout_s", "must be > 0");
      c.evaluator.min_workers = get_count(e, "min_workers", "evaluator.min_workers", 1);
      if (c.evaluator.min_workers < 1) throw ConfigError("evaluator.min_workers", "must be >= 1");
      c.evaluator.worker_wait_s = get_real(e, "worker_wait_s", "evaluator.worker_wait_s", 60.0);
      c.evaluator.grace_s = get_real(e, "grace_s", "evaluator.grace_s", 10.0);
    } else {
      throw ConfigError("evaluator", "must be a string or an object");
    }
  }
  if (c.parallel_replicates && c.evaluator.distributed) {
    throw ConfigError("parallel_replicates", "requires the local evaluator");
  }
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read '" + path.string() + "'");
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("<file>", "'" + path.string() + "' is not valid JSON");
  return parse_config(j);
}

// Canonical JSON form of a config, echoed into the summary.
inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j = c.problem;
  j["label"] = c.label;
  j["algorithm"] = algorithm_name(c.algorithm);
  j["replicates"] = c.replicates;
  j["seed_base"] = c.seed_base;
  switch (c.algorithm) {
    case Algorithm::kGA:
      j["population_size"] = c.ga.population_size;
      j["crossover_rate"] = c.ga.crossover_rate;
      j["mutation_rate"] = c.ga.mutation_rate;
      j["max_generations"] = c.ga.max_generations;
      j["elitism"] = c.ga.elitism;
      if (c.ga.target_fitness) j["target_fitness"] = *c.ga.target_fitness;
      if (c.ga.max_evaluations) j["max_evaluations"] = *c.ga.max_evaluations;
      break;
    case Algorithm::kRandom:
      j["budget"] = c.random_budget;
      j["population_size"] = c.ga.population_size;
      break;
    case Algorithm::kOnePlusOne:
      j["windows"] = c.windows;
      j["window_evals"] = c.window_evals;
      break;
  }
  j["evaluator"] = c.evaluator.distributed ? "distributed" : "local";
  return j;
}

}  // namespace searchathome::harness
