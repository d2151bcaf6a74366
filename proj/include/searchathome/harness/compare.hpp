#pragma once

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "searchathome/harness/results.hpp"
#include "searchathome/stats/descriptive.hpp"
#include "searchathome/stats/mann_whitney.hpp"

namespace searchathome::harness {

inline const std::set<std::string> kComparableMetrics = {"generations", "best_fitness",
                                                         "total_wall_ms", "total_evaluations"};

struct CompareReport {
  std::string metric;
  std::string label_a;
  std::string label_b;
  double alpha = 0.001;
  stats::UTestResult test;
  double a12 = 0.5;  // P(a > b) + 0.5 P(a = b)
  double median_a = 0;
  double median_b = 0;
  bool significant = false;

  std::string verdict() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return std::string(significant ? "significant" : "not significant") + " at alpha=" + buf;
  }

  std::string text() const {
    std::ostringstream out;
    out.precision(6);
    out << "metric: " << metric << "\n"
        << "a: " << label_a << " (n=" << test.n_x << ", median " << median_a << ")\n"
        << "b: " << label_b << " (n=" << test.n_y << ", median " << median_b << ")\n"
        << "U_a = " << test.u_x << ", U_b = " << test.u_y << "\n"
        << "z = " << test.z << ", p = " << test.p_two_sided
        << (test.tie_corrected ? " (tie-corrected)" : "") << "\n"
        << "A12 = " << a12 << "\n"
        << verdict() << "\n";
    return out.str();
  }

  nlohmann::json json() const {
    return {{"metric", metric},
            {"a", {{"label", label_a}, {"n", test.n_x}, {"median", median_a}}},
            {"b", {{"label", label_b}, {"n", test.n_y}, {"median", median_b}}},
            {"u_a", test.u_x},
            {"u_b", test.u_y},
            {"z", test.z},
            {"p_two_sided", test.p_two_sided},
            {"tie_corrected", test.tie_corrected},
            {"a12", a12},
            {"alpha", alpha},
            {"significant", significant}};
  }
};

inline std::string summary_label(const nlohmann::json& summary, const std::string& fallback) {
  if (summary.contains("experiment") && summary["experiment"].contains("label") &&
      summary["experiment"]["label"].is_string()) {
    return summary["experiment"]["label"].get<std::string>();
  }
  return fallback;
}

inline CompareReport compare(const nlohmann::json& a, const nlohmann::json& b,
                             const std::string& metric, double alpha = 0.001) {
  if (!kComparableMetrics.count(metric)) {
    throw std::invalid_argument("unsupported metric '" + metric + "'");
  }
  const auto xs = metric_values(a, metric);
  const auto ys = metric_values(b, metric);
  if (xs.size() < 2 || ys.size() < 2) {
    throw std::invalid_argument("each summary needs at least 2 replicates");
  }
  CompareReport r;
  r.metric = metric;
  r.label_a = summary_label(a, "a");
  r.label_b = summary_label(b, "b");
  r.alpha = alpha;
  r.test = stats::mann_whitney_u(xs, ys);
  r.a12 = stats::vargha_delaney_a12(xs, ys);
  r.median_a = stats::describe(xs).median;
  r.median_b = stats::describe(ys).median;
  r.significant = r.test.p_two_sided < alpha;
  return r;
}

}  // namespace searchathome::harness
