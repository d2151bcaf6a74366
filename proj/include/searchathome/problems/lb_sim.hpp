#pragma once

// Deterministic per-second model of a weighted load balancer in front of a
// small pool of backends. A genome holds (weight, state) per backend.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "searchathome/problems/problem.hpp"

namespace searchathome {

enum class BackendState : int { kReady = 0, kDrain = 1, kMaint = 2 };

inline constexpr Gene kMinWeight = 1;
inline constexpr Gene kMaxWeight = 256;

struct Backend {
  std::int64_t capacity_rps = 1;
  double base_latency_ms = 1.0;
};

struct BackendSetting {
  std::int64_t weight = 1;
  BackendState state = BackendState::kReady;
};

struct LBGenomeView {
  std::vector<BackendSetting> backends;

  static GenomeSpec spec_for(std::size_t backend_count) {
    std::vector<LocusDomain> loci;
    loci.reserve(2 * backend_count);
    for (std::size_t i = 0; i < backend_count; ++i) {
      loci.push_back({kMinWeight, kMaxWeight});
      loci.push_back({0, 2});
    }
    return GenomeSpec(std::move(loci));
  }

  static LBGenomeView decode(const Genome& g) {
    if (g.size() % 2 != 0) throw std::invalid_argument("LBGenomeView: odd genome length");
    LBGenomeView v;
    for (std::size_t i = 0; i < g.size(); i += 2) {
      const Gene w = g.genes[i];
      const Gene s = g.genes[i + 1];
      if (w < kMinWeight || w > kMaxWeight || s < 0 || s > 2) {
        throw std::invalid_argument("LBGenomeView: gene out of domain at backend " +
                                    std::to_string(i / 2));
      }
      v.backends.push_back({w, static_cast<BackendState>(s)});
    }
    return v;
  }

  Genome encode() const {
    Genome g;
    for (const auto& b : backends) {
      g.genes.push_back(b.weight);
      g.genes.push_back(static_cast<Gene>(b.state));
    }
    return g;
  }
};

struct TrafficProfile {
  std::int64_t concurrent_connections = 500;
  std::int64_t duration_s = 30;
  double requests_per_connection_per_s = 1.0;

  double arrival_rate() const {
    return static_cast<double>(concurrent_connections) * requests_per_connection_per_s;
  }
};

struct SimOutcome {
  std::int64_t total_requests = 0;
  std::int64_t failed_requests = 0;
  double mean_latency_ms = 0.0;

  friend bool operator==(const SimOutcome&, const SimOutcome&) = default;
};

// Largest-remainder split of `arrivals` over `weights`; ties go to the
// lower index. Returns per-entry shares summing to `arrivals`.
inline std::vector<std::int64_t> apportion(std::int64_t arrivals,
                                           const std::vector<std::int64_t>& weights) {
  std::vector<std::int64_t> share(weights.size(), 0);
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  if (total <= 0 || arrivals <= 0) return share;
  std::vector<std::int64_t> remainder(weights.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    share[i] = arrivals * weights[i] / total;
    remainder[i] = arrivals * weights[i] % total;
    assigned += share[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < arrivals; ++k, ++assigned) ++share[order[k]];
  return share;
}

inline double backend_latency_ms(const Backend& b, std::int64_t served) {
  const double u = static_cast<double>(served) / static_cast<double>(b.capacity_rps);
  const double latency = b.base_latency_ms / std::max(0.01, 1.0 - u);
  return std::min(latency, 100.0 * b.base_latency_ms);
}

inline SimOutcome lb_simulate(const LBGenomeView& view, const std::vector<Backend>& backends,
                              const TrafficProfile& traffic) {
  if (view.backends.size() != backends.size()) {
    throw std::invalid_argument("lb_simulate: view has " + std::to_string(view.backends.size()) +
                                " backends, pool has " + std::to_string(backends.size()));
  }
  std::vector<std::size_t> active;
  std::vector<std::int64_t> weights;
  for (std::size_t i = 0; i < backends.size(); ++i) {
    if (view.backends[i].state == BackendState::kReady) {
      active.push_back(i);
      weights.push_back(view.backends[i].weight);
    }
  }

  const double rate = traffic.arrival_rate();
  SimOutcome out;
  double latency_sum = 0.0;
  std::int64_t served_total = 0;
  std::int64_t cumulative_before = 0;
  for (std::int64_t t = 1; t <= traffic.duration_s; ++t) {
    const auto cumulative = static_cast<std::int64_t>(std::floor(rate * static_cast<double>(t)));
    const std::int64_t arrivals = cumulative - cumulative_before;
    cumulative_before = cumulative;
    out.total_requests += arrivals;
    if (active.empty()) {
      out.failed_requests += arrivals;
      continue;
    }
    const auto shares = apportion(arrivals, weights);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Backend& b = backends[active[k]];
      const std::int64_t served = std::min(shares[k], b.capacity_rps);
      out.failed_requests += shares[k] - served;
      if (served > 0) {
        latency_sum += static_cast<double>(served) * backend_latency_ms(b, served);
        served_total += served;
      }
    }
  }
  out.mean_latency_ms = served_total > 0 ? latency_sum / static_cast<double>(served_total) : 0.0;
  return out;
}

inline double lb_fitness(const SimOutcome& o) {
  const double failure_fraction =
      o.total_requests == 0
          ? 0.0
          : static_cast<double>(o.failed_requests) / static_cast<double>(o.total_requests);
  return failure_fraction + 0.001 * o.mean_latency_ms;
}

class LoadBalancerProblem final : public Problem {
 public:
  // Two nodes of unequal strength under 500 connections for 30 s.
  static LoadBalancerProblem default_instance() {
    return LoadBalancerProblem({{400, 5.0}, {200, 8.0}}, TrafficProfile{500, 30, 1.0});
  }

  LoadBalancerProblem(std::vector<Backend> backends, TrafficProfile traffic)
      : backends_(std::move(backends)), traffic_(traffic) {
    if (backends_.empty()) throw std::invalid_argument("lb-sim: at least one backend required");
    for (std::size_t i = 0; i < backends_.size(); ++i) {
      if (backends_[i].capacity_rps < 1) {
        throw std::invalid_argument("lb-sim: backend " + std::to_string(i) +
                                    " capacity_rps must be >= 1");
      }
      if (!(backends_[i].base_latency_ms > 0)) {
        throw std::invalid_argument("lb-sim: backend " + std::to_string(i) +
                                    " base_latency_ms must be positive");
      }
    }
    if (traffic_.concurrent_connections < 1 || traffic_.duration_s < 1 ||
        !(traffic_.requests_per_connection_per_s > 0)) {
      throw std::invalid_argument("lb-sim: traffic parameters must be positive");
    }
    spec_ = LBGenomeView::spec_for(backends_.size());
  }

  std::string id() const override { return "lb-sim"; }
  const GenomeSpec& spec() const override { return spec_; }
  double evaluate(const Genome& g) const override {
    return lb_fitness(lb_simulate(LBGenomeView::decode(g), backends_, traffic_));
  }
  nlohmann::json descriptor() const override {
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : backends_) {
      bs.push_back({{"capacity_rps", b.capacity_rps}, {"base_latency_ms", b.base_latency_ms}});
    }
    return {{"problem", "lb-sim"},
            {"backends", bs},
            {"traffic",
             {{"concurrent_connections", traffic_.concurrent_connections},
              {"duration_s", traffic_.duration_s},
              {"requests_per_connection_per_s", traffic_.requests_per_connection_per_s}}}};
  }

  const std::vector<Backend>& backends() const { return backends_; }
  const TrafficProfile& traffic() const { return traffic_; }

 private:
  std::vector<Backend> backends_;
  TrafficProfile traffic_;
  GenomeSpec spec_;
};

}  // namespace searchathome
