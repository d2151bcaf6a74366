#pragma once

// Trace CSV and summary JSON files.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "searchathome/engine/result.hpp"
#include "searchathome/stats/descriptive.hpp"

namespace searchathome::harness {

inline constexpr std::string_view kTraceHeader =
    "replicate,generation,best_fitness,mean_fitness,evaluations,wall_ms,cpu_temp_milli_c,"
    "mem_available_bytes,throttled_now";

// Shortest decimal text that parses back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string trace_row(std::uint64_t replicate, const GenerationRecord& rec) {
  std::string row = std::to_string(replicate) + "," + std::to_string(rec.generation) + "," +
                    format_real(rec.best_fitness) + "," + format_real(rec.mean_fitness) + "," +
                    std::to_string(rec.evaluations_so_far) + "," + std::to_string(rec.wall_ms) +
                    ",";
  if (rec.telemetry && rec.telemetry->cpu_temp_milli_c) {
    row += std::to_string(*rec.telemetry->cpu_temp_milli_c);
  }
  row += ",";
  if (rec.telemetry && rec.telemetry->mem_available_bytes) {
    row += std::to_string(*rec.telemetry->mem_available_bytes);
  }
  row += ",";
  if (rec.telemetry && rec.telemetry->throttle) {
    row += rec.telemetry->throttle->throttled_now ? "1" : "0";
  }
  return row;
}

// Appends rows as records arrive so an interrupted run keeps its trace.
class TraceWriter {
 public:
  TraceWriter(const std::filesystem::path& path, std::uint64_t replicate)
      : out_(path, std::ios::trunc), replicate_(replicate) {
    if (!out_) throw std::runtime_error("cannot write trace file '" + path.string() + "'");
    out_ << kTraceHeader << '\n';
  }

  void write(const GenerationRecord& rec) { out_ << trace_row(replicate_, rec) << '\n'; }
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::uint64_t replicate_;
};

struct TraceRow {
  std::uint64_t replicate = 0;
  std::uint64_t generation = 0;
  double best_fitness = 0;
  double mean_fitness = 0;
  std::uint64_t evaluations = 0;
  std::int64_t wall_ms = 0;
};

inline std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace file '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line != kTraceHeader) throw std::runtime_error("unexpected trace header in " + path.string());
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 9) throw std::runtime_error("malformed trace row in " + path.string());
    rows.push_back({std::stoull(f[0]), std::stoull(f[1]), std::stod(f[2]), std::stod(f[3]),
                    std::stoull(f[4]), std::stoll(f[5])});
  }
  return rows;
}

inline nlohmann::json replicate_entry(std::uint64_t replicate, const ReplicateResult& r) {
  nlohmann::json j = {{"replicate", replicate},
                      {"seed", r.seed},
                      {"converged", r.converged},
                      {"generations", r.generations},
                      {"total_evaluations", r.total_evaluations},
                      {"total_wall_ms", r.total_wall_ms},
                      {"best_fitness", r.best_fitness},
                      {"best_genome", r.best_genome.genes}};
  if (r.interrupted) j["interrupted"] = true;
  if (r.error) j["error"] = *r.error;
  return j;
}

inline nlohmann::json summary_stats(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  const auto s = stats::describe(values);
  return {{"min", s.min}, {"q1", s.q1},     {"median", s.median},
          {"q3", s.q3},   {"max", s.max},   {"mean", s.mean}};
}

// Values of `metric` across the replicate entries of a summary document.
inline std::vector<double> metric_values(const nlohmann::json& summary, const std::string& metric) {
  if (!summary.contains("replicates") || !summary.at("replicates").is_array()) {
    throw std::runtime_error("summary has no replicates array");
  }
  std::vector<double> v;
  for (const auto& r : summary.at("replicates")) {
    if (!r.contains(metric) || !r.at(metric).is_number()) {
      throw std::runtime_error("metric '" + metric + "' absent from replicate entry");
    }
    v.push_back(r.at(metric).get<double>());
  }
  return v;
}

inline nlohmann::json load_summary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read summary '" + path.string() + "'");
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("'" + path.string() + "' is not valid JSON");
  return j;
}

}  // namespace searchathome::harness
