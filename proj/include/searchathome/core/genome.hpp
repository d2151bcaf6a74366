#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace searchathome {

using Gene = std::int64_t;

struct LocusDomain {
  Gene lo;
  Gene hi;

  std::uint64_t size() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
  bool contains(Gene g) const { return lo <= g && g <= hi; }
  friend bool operator==(const LocusDomain&, const LocusDomain&) = default;
};

// Per-locus inclusive integer domains of a genome.
class GenomeSpec {
 public:
  GenomeSpec() = default;

  explicit GenomeSpec(std::vector<LocusDomain> loci) : loci_(std::move(loci)) {
    if (loci_.empty()) throw std::invalid_argument("GenomeSpec: at least one locus required");
    for (std::size_t i = 0; i < loci_.size(); ++i) {
      if (loci_[i].lo > loci_[i].hi) {
        throw std::invalid_argument("GenomeSpec: locus " + std::to_string(i) + " has lo > hi");
      }
    }
  }

  static GenomeSpec uniform(std::size_t length, Gene lo, Gene hi) {
    return GenomeSpec(std::vector<LocusDomain>(length, LocusDomain{lo, hi}));
  }

  std::size_t length() const { return loci_.size(); }
  const LocusDomain& operator[](std::size_t i) const { return loci_[i]; }
  const std::vector<LocusDomain>& loci() const { return loci_; }

  friend bool operator==(const GenomeSpec&, const GenomeSpec&) = default;

 private:
  std::vector<LocusDomain> loci_;
};

struct Genome {
  std::vector<Gene> genes;

  std::size_t size() const { return genes.size(); }
  friend bool operator==(const Genome&, const Genome&) = default;
};

inline bool conforms(const Genome& g, const GenomeSpec& spec) {
  if (g.size() != spec.length()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!spec[i].contains(g.genes[i])) return false;
  }
  return true;
}

struct Individual {
  Genome genome;
  std::optional<double> fitness;
  std::optional<double> eval_ms;
  std::optional<std::string> evaluated_by;

  bool evaluated() const { return fitness.has_value(); }
};

struct Population {
  std::vector<Individual> members;
  std::uint64_t generation = 0;
};

}  // namespace searchathome
