#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace searchathome::stats {

struct SampleSet {
  std::string label;
  std::vector<double> values;
};

// Vargha-Delaney A12: probability that a value drawn from xs exceeds one
// drawn from ys, counting ties as one half.
inline double vargha_delaney_a12(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("vargha_delaney_a12: empty sample");
  double wins = 0.0;
  for (const double x : xs) {
    for (const double y : ys) {
      if (x > y) wins += 1.0;
      else if (x == y) wins += 0.5;
    }
  }
  return wins / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

struct Summary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  std::size_t count = 0;
};

// Quantile by linear interpolation between closest ranks on a sorted sample:
// position p * (n - 1), zero-based.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline Summary describe(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("describe: empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  Summary s;
  s.count = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile_sorted(v, 0.25);
  s.median = quantile_sorted(v, 0.5);
  s.q3 = quantile_sorted(v, 0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

}  // namespace searchathome::stats
