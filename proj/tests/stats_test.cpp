#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "searchathome/core/rng.hpp"
#include "searchathome/stats/descriptive.hpp"
#include "searchathome/stats/mann_whitney.hpp"

namespace st = searchathome::stats;
using Vec = std::vector<double>;

// Reference p-values below were produced once with SciPy's mannwhitneyu
// (two-sided, continuity-corrected asymptotic or exact) and frozen here.

TEST(MannWhitney, IdenticalSamplesGivePOne) {
  const Vec a{3, 3, 3, 3}, b{3, 3, 3};
  const auto r = st::mann_whitney_u(a, b);
  EXPECT_EQ(r.z, 0.0);
  EXPECT_EQ(r.p_two_sided, 1.0);
  const Vec c{1, 2, 3, 4}, d{1, 2, 3, 4};
  EXPECT_EQ(st::mann_whitney_u(c, d).p_two_sided, 1.0);
}

TEST(MannWhitney, FullySeparatedTriples) {
  const Vec a{1, 2, 3}, b{4, 5, 6};
  const auto r = st::mann_whitney_u(a, b);
  EXPECT_EQ(r.u_x, 0.0);
  EXPECT_EQ(r.u_y, 9.0);
  EXPECT_NEAR(r.p_two_sided, 0.08085559837005224, 1e-12);
  EXPECT_NEAR(st::exact_mwu_p(a, b), 0.1, 1e-12);
}

TEST(MannWhitney, TiedSamplesUseCorrectedVariance) {
  const Vec a{1, 2, 2, 3, 5}, b{2, 3, 4, 4, 6, 7};
  const auto r = st::mann_whitney_u(a, b);
  EXPECT_TRUE(r.tie_corrected);
  EXPECT_EQ(r.u_x, 6.5);
  EXPECT_NEAR(r.p_two_sided, 0.13862587987892763, 1e-12);
}

TEST(MannWhitney, SeparatedTwentyFiveVsTwentyFive) {
  Vec a, b;
  for (int i = 0; i < 25; ++i) {
    a.push_back(i);
    b.push_back(100 + i);
  }
  EXPECT_LT(st::mann_whitney_u(a, b).p_two_sided, 0.001);
}

TEST(MannWhitney, EmptySampleRejected) {
  const Vec a{1}, none;
  EXPECT_THROW(st::mann_whitney_u(a, none), std::invalid_argument);
  EXPECT_THROW(st::exact_mwu_p(none, a), std::invalid_argument);
}

TEST(ExactMWU, SmallCases) {
  EXPECT_DOUBLE_EQ(st::exact_mwu_p(Vec{1}, Vec{2}), 1.0);
  EXPECT_NEAR(st::exact_mwu_p(Vec{1, 2}, Vec{3, 4}), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(st::exact_mwu_p(Vec{1, 5, 9, 13}, Vec{2, 3, 4, 6, 7}), 0.5555555555555556, 1e-12);
}

TEST(ExactMWU, TooLargeRejected) {
  const Vec a(9, 1.0), b(8, 2.0);
  EXPECT_THROW(st::exact_mwu_p(a, b), std::invalid_argument);
}

TEST(Midranks, TiesShareAverageRank) {
  EXPECT_EQ(st::midranks(Vec{10, 20, 20, 30}), (Vec{1, 2.5, 2.5, 4}));
  EXPECT_EQ(st::midranks(Vec{5, 5, 5}), (Vec{2, 2, 2}));
}

TEST(MannWhitneyProperties, SymmetryShiftAndUSum) {
  searchathome::Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    Vec a(1 + rng.below(20)), b(1 + rng.below(20));
    for (auto& v : a) v = static_cast<double>(rng.below(15));
    for (auto& v : b) v = static_cast<double>(rng.below(15));
    const auto ab = st::mann_whitney_u(a, b);
    const auto ba = st::mann_whitney_u(b, a);
    ASSERT_NEAR(ab.p_two_sided, ba.p_two_sided, 1e-12);
    ASSERT_EQ(ab.u_x + ab.u_y, static_cast<double>(a.size() * b.size()));
    ASSERT_GE(ab.p_two_sided, 0.0);
    ASSERT_LE(ab.p_two_sided, 1.0);

    Vec a2 = a, b2 = b;
    for (auto& v : a2) v = 3.0 * v + 7.0;
    for (auto& v : b2) v = 3.0 * v + 7.0;
    ASSERT_NEAR(st::mann_whitney_u(a2, b2).p_two_sided, ab.p_two_sided, 1e-12);
  }
}

TEST(A12, Extremes) {
  EXPECT_EQ(st::vargha_delaney_a12(Vec{5, 6}, Vec{1, 2}), 1.0);
  EXPECT_EQ(st::vargha_delaney_a12(Vec{1, 2}, Vec{5, 6}), 0.0);
  EXPECT_EQ(st::vargha_delaney_a12(Vec{3, 3}, Vec{3, 3, 3}), 0.5);
  EXPECT_EQ(st::vargha_delaney_a12(Vec{1, 3}, Vec{2}), 0.5);
  EXPECT_DOUBLE_EQ(st::vargha_delaney_a12(Vec{1, 2, 3}, Vec{2}), 0.5);
  EXPECT_DOUBLE_EQ(st::vargha_delaney_a12(Vec{2, 3}, Vec{1, 2}), 0.875);
}

TEST(A12, ComplementProperty) {
  searchathome::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Vec a(1 + rng.below(10)), b(1 + rng.below(10));
    for (auto& v : a) v = static_cast<double>(rng.below(6));
    for (auto& v : b) v = static_cast<double>(rng.below(6));
    ASSERT_NEAR(st::vargha_delaney_a12(a, b) + st::vargha_delaney_a12(b, a), 1.0, 1e-12);
  }
}

TEST(Describe, FiveValues) {
  const auto s = st::describe(Vec{5, 1, 4, 2, 3});
  EXPECT_EQ(s.count, 5U);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.q1, 2);
  EXPECT_EQ(s.median, 3);
  EXPECT_EQ(s.q3, 4);
  EXPECT_EQ(s.max, 5);
  EXPECT_EQ(s.mean, 3);
}

TEST(Describe, InterpolatesBetweenOrderStatistics) {
  const auto s = st::describe(Vec{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(s.q1, 1.75);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.q3, 3.25);
}

TEST(Describe, SingletonAndEmpty) {
  const auto s = st::describe(Vec{7});
  EXPECT_EQ(s.q1, 7);
  EXPECT_EQ(s.q3, 7);
  EXPECT_THROW(st::describe(Vec{}), std::invalid_argument);
}
