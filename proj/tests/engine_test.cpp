#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/reference_prng.hpp"
#include "searchathome/engine/ga.hpp"
#include "searchathome/engine/online_ea.hpp"
#include "searchathome/engine/random_search.hpp"
#include "searchathome/problems/lb_sim.hpp"
#include "searchathome/problems/string_search.hpp"

namespace sah = searchathome;

namespace {

// Fitness equals the single gene; the optimum is the domain's low end.
class LineProblem final : public sah::Problem {
 public:
  LineProblem(sah::Gene lo, sah::Gene hi) : spec_({{lo, hi}}), lo_(lo) {}
  std::string id() const override { return "line"; }
  const sah::GenomeSpec& spec() const override { return spec_; }
  double evaluate(const sah::Genome& g) const override { return static_cast<double>(g.genes[0]); }
  std::optional<double> target_fitness() const override { return static_cast<double>(lo_); }
  nlohmann::json descriptor() const override { return {{"problem", "line"}}; }

 private:
  sah::GenomeSpec spec_;
  sah::Gene lo_;
};

class FailingEvaluator final : public sah::Evaluator {
 public:
  explicit FailingEvaluator(int ok_batches) : ok_batches_(ok_batches) {}
  std::vector<sah::Evaluation> evaluate(const sah::Problem& p,
                                        std::span<const sah::Genome> batch) override {
    if (ok_batches_-- <= 0) throw sah::EvaluationError("node lost");
    return inner_.evaluate(p, batch);
  }

 private:
  int ok_batches_;
  sah::LocalEvaluator inner_;
};

sah::Population evaluated_population(const sah::Problem& p, std::size_t n, std::uint64_t seed) {
  sah::Rng rng(seed);
  sah::Population pop;
  for (std::size_t i = 0; i < n; ++i) {
    auto g = sah::random_genome(p.spec(), rng);
    const double f = p.evaluate(g);
    pop.members.push_back({std::move(g), f, 0.0, "local"});
  }
  return pop;
}

}  // namespace

TEST(Selection, SingleMemberAlwaysChosen) {
  sah::Rng rng(1);
  const std::vector<double> f{123.0};
  for (int i = 0; i < 100; ++i) ASSERT_EQ(sah::select_parent_weighted(f, rng), 0U);
  EXPECT_EQ(rng.draws(), 100U);
}

TEST(Selection, EqualFitnessIsUniform) {
  sah::Rng rng(8);
  const std::vector<double> f(10, 42.0);
  const sah::WeightedSelector sel(f);
  std::array<int, 10> counts{};
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) ++counts[sel.select(rng)];
  double chi2 = 0.0;
  for (const int c : counts) {
    const double e = kDraws / 10.0;
    chi2 += (c - e) * (c - e) / e;
  }
  EXPECT_LT(chi2, 27.877);  // chi-square, 9 df, p = 0.001
}

TEST(Selection, InverseWeightsTwoToOne) {
  sah::Rng rng(12);
  const std::vector<double> f{0.0, 1.0};  // weights 1 and 1/2
  const sah::WeightedSelector sel(f);
  int first = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) first += sel.select(rng) == 0;
  EXPECT_NEAR(static_cast<double>(first) / kDraws, 2.0 / 3.0, 0.02);
}

TEST(Selection, EmptyRejected) {
  EXPECT_THROW(sah::WeightedSelector(std::vector<double>{}), std::invalid_argument);
}

TEST(GAConfig, Validation) {
  sah::GAConfig c;
  EXPECT_NO_THROW(c.validate());
  c.population_size = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.crossover_rate = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.mutation_rate = -0.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.elitism = c.population_size;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(GAStep, ElitePreservedAndBestNeverWorsens) {
  const sah::StringSearchProblem p("search at home");
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.population_size = 20;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto pop = evaluated_population(p, 20, seed);
    sah::Rng rng(seed + 1000);
    double best = 1e300;
    for (const auto& m : pop.members) best = std::min(best, *m.fitness);
    for (int gen = 0; gen < 20; ++gen) {
      auto step = sah::ga_step(pop, c, p, ev, rng);
      ASSERT_LE(step.record.best_fitness, best);
      ASSERT_EQ(step.population.members.size(), 20U);
      ASSERT_EQ(step.population.generation, pop.generation + 1);
      best = step.record.best_fitness;
      pop = std::move(step.population);
    }
  }
}

TEST(GAStep, OperatorsDisabledOnlyResample) {
  const sah::StringSearchProblem p("operators");
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.population_size = 30;
  c.crossover_rate = 0.0;
  c.mutation_rate = 0.0;
  const auto pop = evaluated_population(p, 30, 4);
  std::set<std::vector<sah::Gene>> parents;
  for (const auto& m : pop.members) parents.insert(m.genome.genes);
  sah::Rng rng(5);
  const auto step = sah::ga_step(pop, c, p, ev, rng);
  for (const auto& m : step.population.members) EXPECT_TRUE(parents.count(m.genome.genes));
  // Per pair: two selections, one crossover coin, two mutation coins. 29 slots -> 15 pairs.
  EXPECT_EQ(rng.draws(), 15U * 5U);
}

TEST(GAStep, ElitesAreNotReevaluated) {
  const sah::StringSearchProblem p("elite");
  sah::LocalEvaluator local;
  sah::CountingEvaluator counting(local);
  sah::GAConfig c;
  c.population_size = 10;
  c.elitism = 3;
  const auto pop = evaluated_population(p, 10, 2);
  sah::Rng rng(3);
  const auto step = sah::ga_step(pop, c, p, counting, rng, 10);
  EXPECT_EQ(counting.count(), 7U);
  EXPECT_EQ(step.record.evaluations_so_far, 17U);
}

TEST(GARun, InitialPopulationMatchesReferenceStream) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.max_generations = 0;
  const auto r = sah::ga_run(c, p, ev, 1);
  ASSERT_EQ(r.trace.size(), 1U);
  EXPECT_EQ(r.generations, 0U);
  EXPECT_EQ(r.total_evaluations, 500U);

  // Independent recomputation of generation 0 from the reference generator.
  auto ref = oracle::Xoshiro256StarStar::seeded(1);
  const std::string& target = p.target();
  long best = -1, sum = 0;
  for (int i = 0; i < 500; ++i) {
    long f = 0;
    for (std::size_t k = 0; k < target.size(); ++k) {
      const long gene = 32 + static_cast<long>(ref.next() % 95);
      f += std::labs(gene - static_cast<long>(static_cast<unsigned char>(target[k])));
    }
    sum += f;
    if (best < 0 || f < best) best = f;
  }
  EXPECT_EQ(r.trace[0].best_fitness, static_cast<double>(best));
  EXPECT_DOUBLE_EQ(r.trace[0].mean_fitness, static_cast<double>(sum) / 500.0);
}

TEST(GARun, GoldenTenGenerationTrace) {
  struct Row {
    std::uint64_t generation;
    double best, mean;
    std::uint64_t evaluations;
  };
  // Frozen from the default configuration, symposium target, seed 1.
  const std::vector<Row> golden{
      {0, 2290, 2840.7600000000002, 500},  {1, 2218, 2823.6779999999999, 999},
      {2, 2167, 2797.0999999999999, 1498}, {3, 2167, 2773.3879999999999, 1997},
      {4, 2085, 2745.502, 2496},           {5, 2085, 2745.056, 2995},
      {6, 2085, 2727.1619999999998, 3494}, {7, 2040, 2703.3539999999998, 3993},
      {8, 2040, 2696.002, 4492},           {9, 2038, 2668.5700000000002, 4991},
      {10, 2009, 2642.3119999999999, 5490},
  };
  const sah::StringSearchProblem p;
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.max_generations = 10;
  const auto r = sah::ga_run(c, p, ev, 1);
  ASSERT_EQ(r.trace.size(), golden.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    EXPECT_EQ(r.trace[i].generation, golden[i].generation);
    EXPECT_EQ(r.trace[i].best_fitness, golden[i].best);
    EXPECT_DOUBLE_EQ(r.trace[i].mean_fitness, golden[i].mean);
    EXPECT_EQ(r.trace[i].evaluations_so_far, golden[i].evaluations);
  }
  EXPECT_EQ(r.best_fitness, 2009);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.generations, 10U);
}

TEST(GARun, SameSeedSameResult) {
  const sah::StringSearchProblem p("determinism");
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.population_size = 40;
  c.max_generations = 50;
  const auto a = sah::ga_run(c, p, ev, 99);
  const auto b = sah::ga_run(c, p, ev, 99);
  EXPECT_TRUE(sah::same_logical_result(a, b));
  EXPECT_FALSE(sah::same_logical_result(a, sah::ga_run(c, p, ev, 100)));
}

TEST(GARun, ShortTargetConverges) {
  const sah::StringSearchProblem p("ab");
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.population_size = 10;
  c.max_generations = 100000;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = sah::ga_run(c, p, ev, seed);
    EXPECT_TRUE(r.converged) << "seed " << seed;
    EXPECT_EQ(r.best_fitness, 0.0);
    EXPECT_EQ(sah::decode_string(r.best_genome), "ab");
    EXPECT_EQ(r.trace.back().best_fitness, 0.0);
    EXPECT_EQ(r.generations + 1, r.trace.size());
  }
}

TEST(GARun, BestTraceIsMonotone) {
  const sah::StringSearchProblem p("monotone best");
  sah::LocalEvaluator ev;
  sah::GAConfig c;
  c.population_size = 16;
  c.max_generations = 300;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = sah::ga_run(c, p, ev, seed);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      ASSERT_LE(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
      ASSERT_GT(r.trace[i].evaluations_so_far, r.trace[i - 1].evaluations_so_far);
    }
  }
}

TEST(GARun, EvaluationBudgetIsRespected) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator local;
  sah::CountingEvaluator counting(local);
  sah::GAConfig c;
  c.population_size = 50;
  c.max_evaluations = 5000;
  const auto r = sah::ga_run(c, p, counting, 3);
  EXPECT_EQ(counting.count(), r.total_evaluations);
  EXPECT_LE(r.total_evaluations, 5000U);
  EXPECT_GT(r.total_evaluations, 5000U - 49U);  // no room for one more generation
}

TEST(GARun, StopFlagInterrupts) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator ev;
  std::atomic<bool> stop{false};
  sah::RunOptions opts;
  opts.stop = &stop;
  opts.on_record = [&](const sah::GenerationRecord& rec) {
    if (rec.generation == 3) stop = true;
  };
  sah::GAConfig c;
  c.population_size = 20;
  const auto r = sah::ga_run(c, p, ev, 1, opts);
  EXPECT_TRUE(r.interrupted);
  EXPECT_EQ(r.generations, 3U);
}

TEST(GARun, TelemetryEveryNthRecord) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator ev;
  sah::RunOptions opts;
  opts.telemetry = [] { return sah::sample_host(sah::HostSources::none()); };
  opts.telemetry_every = 4;
  sah::GAConfig c;
  c.population_size = 10;
  c.max_generations = 9;
  const auto r = sah::ga_run(c, p, ev, 1, opts);
  for (const auto& rec : r.trace) EXPECT_EQ(rec.telemetry.has_value(), rec.generation % 4 == 0);
}

TEST(GARun, EvaluatorFailureIsReported) {
  const sah::StringSearchProblem p;
  FailingEvaluator ev(3);
  sah::GAConfig c;
  c.population_size = 10;
  const auto r = sah::ga_run(c, p, ev, 1);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(*r.error, "node lost");
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.trace.size(), 3U);
}

TEST(RandomSearch, BudgetOneIsOneEvaluation) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator local;
  sah::CountingEvaluator counting(local);
  const auto r = sah::random_search_run(1, p, counting, 7);
  EXPECT_EQ(counting.count(), 1U);
  EXPECT_EQ(r.total_evaluations, 1U);
  ASSERT_EQ(r.trace.size(), 1U);
  EXPECT_EQ(r.trace[0].best_fitness, r.best_fitness);
  EXPECT_EQ(r.best_fitness, p.evaluate(r.best_genome));
  EXPECT_THROW(sah::random_search_run(0, p, counting, 7), std::invalid_argument);
}

TEST(RandomSearch, SingletonDomainHitsOptimum) {
  const LineProblem p(3, 3);
  sah::LocalEvaluator ev;
  const auto r = sah::random_search_run(10, p, ev, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.best_fitness, 3.0);
}

TEST(RandomSearch, BlocksAndBestTrace) {
  const sah::StringSearchProblem p;
  sah::LocalEvaluator local;
  sah::CountingEvaluator counting(local);
  const auto r = sah::random_search_run(1234, p, counting, 2, 500);
  EXPECT_EQ(counting.count(), 1234U);
  EXPECT_EQ(counting.batches(), 3U);
  EXPECT_EQ(r.generations, 3U);
  ASSERT_EQ(r.trace.size(), 3U);
  EXPECT_EQ(r.trace.back().evaluations_so_far, 1234U);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
  }
  // The same stream as one big batch.
  sah::LocalEvaluator ev;
  EXPECT_EQ(sah::random_search_run(1234, p, ev, 2, 5000).best_fitness, r.best_fitness);
}

TEST(OnlineEA, ConstantDomainStaysPut) {
  const LineProblem p(4, 4);
  sah::LocalEvaluator ev;
  const auto r = sah::one_plus_one_online_run(p, 20, 1, 1, ev);
  ASSERT_EQ(r.trace.size(), 21U);
  for (const auto& rec : r.trace) EXPECT_EQ(rec.best_fitness, 4.0);
  EXPECT_TRUE(r.converged);
}

TEST(OnlineEA, MonotoneProblemDescends) {
  const LineProblem p(0, 1000);
  sah::LocalEvaluator local;
  sah::CountingEvaluator counting(local);
  const auto r = sah::one_plus_one_online_run(p, 200, 3, 9, counting);
  EXPECT_EQ(counting.count(), 201U * 3U);
  EXPECT_EQ(r.total_evaluations, 603U);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    ASSERT_LE(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
  }
  EXPECT_LT(r.best_fitness, r.trace.front().best_fitness);
  EXPECT_LE(r.best_fitness, 50.0);
}

TEST(OnlineEA, LoadBalancerTraceIsMonotone) {
  const auto p = sah::LoadBalancerProblem::default_instance();
  sah::LocalEvaluator ev;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = sah::one_plus_one_online_run(p, 50, 1, seed, ev);
    ASSERT_EQ(r.trace.size(), 51U);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      ASSERT_LE(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
    }
    EXPECT_EQ(r.best_fitness, p.evaluate(r.best_genome));
  }
}

TEST(OnlineEA, RejectsEmptyWindows) {
  const LineProblem p(0, 1);
  sah::LocalEvaluator ev;
  EXPECT_THROW(sah::one_plus_one_online_run(p, 0, 1, 1, ev), std::invalid_argument);
  EXPECT_THROW(sah::one_plus_one_online_run(p, 1, 0, 1, ev), std::invalid_argument);
}
