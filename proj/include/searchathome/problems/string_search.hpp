#pragma once

// String search: find a fixed printable-ASCII string, scoring a candidate by
// the summed absolute code-point distance to the target.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "searchathome/problems/problem.hpp"

namespace searchathome {

inline constexpr std::string_view kSymposiumTarget =
    "12th Symposium for Search-Based Software Engineering | http://ssbse2020.di.uniba.it/";

inline constexpr Gene kPrintableLo = 32;
inline constexpr Gene kPrintableHi = 126;

inline std::string decode_string(const Genome& g) {
  std::string out;
  out.reserve(g.size());
  for (const Gene code : g.genes) {
    if (code < kPrintableLo || code > kPrintableHi) {
      throw std::invalid_argument("decode_string: gene " + std::to_string(code) +
                                  " outside printable ASCII");
    }
    out.push_back(static_cast<char>(code));
  }
  return out;
}

inline Genome encode_string(std::string_view text) {
  Genome g;
  g.genes.reserve(text.size());
  for (const char c : text) g.genes.push_back(static_cast<unsigned char>(c));
  return g;
}

inline std::int64_t string_fitness(const Genome& candidate, std::string_view target) {
  if (candidate.size() != target.size()) {
    throw std::invalid_argument("string_fitness: candidate length " +
                                std::to_string(candidate.size()) + " != target length " +
                                std::to_string(target.size()));
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    sum += std::llabs(candidate.genes[i] - static_cast<unsigned char>(target[i]));
  }
  return sum;
}

using BigInt = boost::multiprecision::cpp_int;

inline BigInt search_space_size(const GenomeSpec& spec) {
  BigInt n = 1;
  for (const auto& locus : spec.loci()) n *= locus.size();
  return n;
}

class StringSearchProblem final : public Problem {
 public:
  explicit StringSearchProblem(std::string target = std::string(kSymposiumTarget))
      : target_(std::move(target)) {
    if (target_.empty()) throw std::invalid_argument("string-search: target must be non-empty");
    for (std::size_t i = 0; i < target_.size(); ++i) {
      const auto code = static_cast<unsigned char>(target_[i]);
      if (code < kPrintableLo || code > kPrintableHi) {
        throw std::invalid_argument("string-search: target character at index " +
                                    std::to_string(i) + " is outside the gene alphabet [32, 126]");
      }
    }
    spec_ = GenomeSpec::uniform(target_.size(), kPrintableLo, kPrintableHi);
  }

  std::string id() const override { return "string-search"; }
  const GenomeSpec& spec() const override { return spec_; }
  double evaluate(const Genome& g) const override {
    return static_cast<double>(string_fitness(g, target_));
  }
  std::optional<double> target_fitness() const override { return 0.0; }
  nlohmann::json descriptor() const override {
    return {{"problem", "string-search"}, {"target", target_}};
  }

  const std::string& target() const { return target_; }

 private:
  std::string target_;
  GenomeSpec spec_;
};

}  // namespace searchathome
