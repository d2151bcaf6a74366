#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "searchathome/problems/lb_sim.hpp"
#include "searchathome/problems/string_search.hpp"

namespace searchathome {

// Rebuilds a problem from Problem::descriptor() output.
inline ProblemPtr problem_from_descriptor(const nlohmann::json& d) {
  const auto kind = d.value("problem", std::string{});
  if (kind == "string-search") {
    return std::make_shared<StringSearchProblem>(
        d.value("target", std::string(kSymposiumTarget)));
  }
  if (kind == "lb-sim") {
    auto def = LoadBalancerProblem::default_instance();
    std::vector<Backend> backends = def.backends();
    if (d.contains("backends")) {
      backends.clear();
      for (const auto& b : d.at("backends")) {
        backends.push_back({b.at("capacity_rps").get<std::int64_t>(),
                            b.at("base_latency_ms").get<double>()});
      }
    }
    TrafficProfile traffic = def.traffic();
    if (d.contains("traffic")) {
      const auto& t = d.at("traffic");
      traffic.concurrent_connections =
          t.value("concurrent_connections", traffic.concurrent_connections);
      traffic.duration_s = t.value("duration_s", traffic.duration_s);
      traffic.requests_per_connection_per_s =
          t.value("requests_per_connection_per_s", traffic.requests_per_connection_per_s);
    }
    return std::make_shared<LoadBalancerProblem>(std::move(backends), traffic);
  }
  throw std::invalid_argument("unknown problem '" + kind + "'");
}

inline ProblemRegistry default_problem_registry() {
  ProblemRegistry r;
  r.add(std::make_shared<StringSearchProblem>());
  r.add(std::make_shared<LoadBalancerProblem>(LoadBalancerProblem::default_instance()));
  return r;
}

}  // namespace searchathome
