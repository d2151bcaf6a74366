#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "searchathome/core/genome.hpp"

namespace searchathome {

// A minimization problem over integer genomes. Implementations must be
// pure: the same genome always yields the same fitness.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string id() const = 0;
  virtual const GenomeSpec& spec() const = 0;
  virtual double evaluate(const Genome& g) const = 0;

  // Fitness at or below which a run counts as converged, if any.
  virtual std::optional<double> target_fitness() const { return std::nullopt; }

  // Instance parameters, enough for a remote node to rebuild the problem.
  virtual nlohmann::json descriptor() const = 0;
};

using ProblemPtr = std::shared_ptr<const Problem>;

class ProblemRegistry {
 public:
  void add(ProblemPtr p) {
    auto key = p->id();
    problems_[std::move(key)] = std::move(p);
  }

  ProblemPtr find(const std::string& id) const {
    auto it = problems_.find(id);
    return it == problems_.end() ? nullptr : it->second;
  }

  bool contains(const std::string& id) const { return problems_.count(id) != 0; }
  std::size_t size() const { return problems_.size(); }

 private:
  std::map<std::string, ProblemPtr> problems_;
};

}  // namespace searchathome
