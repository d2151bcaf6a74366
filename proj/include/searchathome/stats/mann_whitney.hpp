#pragma once

// Wilcoxon-Mann-Whitney rank-sum test.
//
// mann_whitney_u uses the normal approximation with tie-corrected variance
// and a 0.5 continuity correction. exact_mwu_p enumerates every way of
// assigning the pooled midranks to the first sample, for small samples.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace searchathome::stats {

struct UTestResult {
  double u_x = 0.0;
  double u_y = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  std::size_t n_x = 0;
  std::size_t n_y = 0;
  bool tie_corrected = false;
};

// Midranks (1-based, ties averaged) of `values` in their original order.
inline std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline UTestResult mann_whitney_u(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) {
    throw std::invalid_argument("mann_whitney_u: both samples must be non-empty");
  }
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  const double n = static_cast<double>(nx + ny);

  std::vector<double> pooled(xs.begin(), xs.end());
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const auto ranks = midranks(pooled);
  const double rank_sum_x = std::accumulate(ranks.begin(), ranks.begin() + nx, 0.0);

  UTestResult r;
  r.n_x = nx;
  r.n_y = ny;
  const double fx = static_cast<double>(nx);
  const double fy = static_cast<double>(ny);
  r.u_x = rank_sum_x - fx * (fx + 1.0) / 2.0;
  r.u_y = fx * fy - r.u_x;

  // Tie term: sum over tie groups of (t^3 - t).
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  r.tie_corrected = tie_term > 0.0;

  const double mean = fx * fy / 2.0;
  const double variance = fx * fy / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) {
    r.z = 0.0;
    r.p_two_sided = 1.0;
    return r;
  }
  const double diff = r.u_x - mean;
  const double corrected = std::max(0.0, std::abs(diff) - 0.5);
  r.z = std::copysign(corrected / std::sqrt(variance), diff);
  r.p_two_sided = std::clamp(2.0 * normal_cdf(-std::abs(r.z)), 0.0, 1.0);
  return r;
}

inline constexpr std::size_t kExactMaxTotal = 16;

// Exact two-sided p: twice the smaller tail of the permutation distribution
// of U_x, clamped to 1.
inline double exact_mwu_p(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("exact_mwu_p: empty sample");
  const std::size_t nx = xs.size();
  const std::size_t n = nx + ys.size();
  if (n > kExactMaxTotal) {
    throw std::invalid_argument("exact_mwu_p: n_x + n_y = " + std::to_string(n) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kExactMaxTotal));
  }
  std::vector<double> pooled(xs.begin(), xs.end());
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const auto ranks = midranks(pooled);
  const double observed = std::accumulate(ranks.begin(), ranks.begin() + nx, 0.0);

  // Rank sums are multiples of 0.5; compare with a tolerance well below that.
  constexpr double kEps = 1e-9;
  std::uint64_t total = 0, at_most = 0, at_least = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != nx) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) sum += ranks[i];
    }
    ++total;
    if (sum <= observed + kEps) ++at_most;
    if (sum >= observed - kEps) ++at_least;
  }
  const double lower = static_cast<double>(at_most) / static_cast<double>(total);
  const double upper = static_cast<double>(at_least) / static_cast<double>(total);
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

}  // namespace searchathome::stats
