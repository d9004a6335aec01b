// Copyright 2026 The distval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distval/mmd.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "distval/error.hpp"
#include "distval/huber.hpp"
#include "distval/rng.hpp"
#include "oracles.hpp"

namespace distval {
namespace {

// sqrt(2 - 2 exp(-0.5)), evaluated at 30 digits.
constexpr double kUnitGap = 0.887095643419994005;

const KernelConfig kUnit = KernelConfig::rbf(1.0);

TEST(MmdBiasedTest, IdenticalDatasetsGiveZero) {
  const auto d = Dataset::from_values("d", {0.1, 2.5, -3.0});
  EXPECT_EQ(mmd_biased(kUnit, d, d.with_id("copy")), 0.0);
}

TEST(MmdBiasedTest, SinglePointsUnitApart) {
  const auto d = Dataset::from_values("d", {0.0});
  const auto e = Dataset::from_values("e", {1.0});
  EXPECT_NEAR(mmd_biased(kUnit, d, e), kUnitGap, 1e-15);
}

TEST(MmdBiasedTest, DuplicatedPointIsSameEmpiricalMeasure) {
  const auto d = Dataset::from_values("d", {0.0, 0.0});
  const auto e = Dataset::from_values("e", {0.0});
  EXPECT_EQ(mmd_biased(kUnit, d, e), 0.0);
}

TEST(MmdBiasedTest, DimensionMismatch) {
  const auto d = Dataset::from_values("d", {0.0});
  const auto e = Dataset::from_points("e", {{0.0, 1.0}});
  EXPECT_THROW(mmd_biased(kUnit, d, e), InputError);
}

TEST(MmdBiasedTest, MatchesNaiveOracle) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> a(1 + rng.below(40)), b(1 + rng.below(40));
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal() + 0.5;
    const auto da = Dataset::from_values("a", a);
    const auto db = Dataset::from_values("b", b);
    EXPECT_NEAR(mmd_biased(kUnit, da, db), oracle::naive_mmd_biased(da, db, 1.0),
                1e-12);
  }
}

TEST(Mmd2UnbiasedTest, AllEqualTerms) {
  const auto d = Dataset::from_values("d", {0.0, 0.0});
  EXPECT_EQ(mmd2_unbiased(kUnit, d, d), 0.0);
}

TEST(Mmd2UnbiasedTest, SameTwoPoints) {
  const auto d = Dataset::from_values("d", {0.0, 1.0});
  EXPECT_NEAR(mmd2_unbiased(kUnit, d, d.with_id("e")), 0.0, 1e-15);
}

TEST(Mmd2UnbiasedTest, FarApartPairs) {
  const auto d = Dataset::from_values("d", {0.0, 0.0});
  const auto e = Dataset::from_values("e", {5.0, 5.0});
  EXPECT_NEAR(mmd2_unbiased(kUnit, d, e), 2.0 - 2.0 * std::exp(-12.5), 1e-15);
}

TEST(Mmd2UnbiasedTest, UnequalSizesUseFullCrossAverage) {
  const auto d = Dataset::from_values("d", {0.0, 1.0});
  const auto e = Dataset::from_values("e", {0.0, 1.0, 2.0});
  const double kxx = std::exp(-0.5) * 2.0 / 2.0;
  const double kyy =
      (4.0 * std::exp(-0.5) + 2.0 * std::exp(-2.0)) / 6.0;
  const double kxy = oracle::naive_gram(d, e, 1.0) / 6.0;
  EXPECT_NEAR(mmd2_unbiased(kUnit, d, e), kxx + kyy - 2.0 * kxy, 1e-15);
}

TEST(Mmd2UnbiasedTest, TooFewPoints) {
  const auto d = Dataset::from_values("d", {0.0});
  const auto e = Dataset::from_values("e", {0.0, 1.0});
  EXPECT_THROW(mmd2_unbiased(kUnit, d, e), InputError);
  EXPECT_THROW(mmd2_unbiased(kUnit, e, d), InputError);
}

TEST(MmdDiscreteTest, EqualPmfsGiveZero) {
  const auto p = DiscretePmf::on_integers({0.2, 0.3, 0.5});
  EXPECT_EQ(mmd_discrete(kUnit, p, p), 0.0);
}

TEST(MmdDiscreteTest, PointMassesUnitApart) {
  const auto p = DiscretePmf::point_mass({0.0});
  const auto q = DiscretePmf::point_mass({1.0});
  EXPECT_NEAR(mmd_discrete(kUnit, p, q), kUnitGap, 1e-15);
}

TEST(MmdDiscreteTest, HalfMassIsHalfDistance) {
  const auto p = DiscretePmf::point_mass({0.0});
  const auto q = DiscretePmf::on_integers({0.5, 0.5});
  EXPECT_NEAR(mmd_discrete(kUnit, p, q), 0.443547821709997002, 1e-15);
  EXPECT_NEAR(mmd_discrete(kUnit, p, q), oracle::expectation_mmd(p, q, 1.0),
              1e-12);
}

TEST(MmdDiscreteTest, MatchesExpectationOracle) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_pmf(rng, 11);
    const auto q = oracle::random_pmf(rng, 11);
    EXPECT_NEAR(mmd_discrete(kUnit, p, q), oracle::expectation_mmd(p, q, 1.0),
                1e-7);
  }
}

TEST(MmdDiscreteTest, TriangleInequality) {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto p = oracle::random_pmf(rng, 11);
    const auto q = oracle::random_pmf(rng, 11);
    const auto r = oracle::random_pmf(rng, 11);
    EXPECT_LE(mmd_discrete(kUnit, p, r),
              mmd_discrete(kUnit, p, q) + mmd_discrete(kUnit, q, r) + 1e-9);
  }
}

TEST(MmdDiscreteTest, ZeroIffEqual) {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_pmf(rng, 8);
    const auto q = oracle::random_pmf(rng, 8);
    ASSERT_GT(max_abs_difference(p, q), 0.0);
    EXPECT_GT(mmd_discrete(kUnit, p, q), 0.0);
    EXPECT_EQ(mmd_discrete(kUnit, p, p), 0.0);
  }
}

TEST(MmdDiscreteTest, DimensionMismatch) {
  const auto p = DiscretePmf::point_mass({0.0});
  const auto q = DiscretePmf::point_mass({0.0, 1.0});
  EXPECT_THROW(mmd_discrete(kUnit, p, q), InputError);
}

// Lemma A.1 at a size small enough for a unit test; the acceptance suite
// runs the full grid.
TEST(MmdEstimatorTest, BiasedEstimatorConcentrates) {
  const auto p = DiscretePmf::on_integers({0.1, 0.2, 0.3, 0.4});
  const auto q = DiscretePmf::on_integers({0.4, 0.3, 0.2, 0.1});
  const double truth = mmd_discrete(kUnit, p, q);
  const std::size_t m = 100;
  const double eps = 0.1;
  const double slack = 4.0 * std::sqrt(1.0 / m) + eps;
  const double bound = 2.0 * std::exp(-eps * eps * m * m / (2.0 * 2 * m));
  int violations = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto d = sample_distribution(p, m, derive_seed(1, 2 * t));
    const auto e = sample_distribution(q, m, derive_seed(1, 2 * t + 1));
    if (std::abs(mmd_biased(kUnit, d, e) - truth) > slack) ++violations;
  }
  EXPECT_LE(static_cast<double>(violations) / trials, bound + 0.03);
}

TEST(MmdEstimatorTest, UnbiasedMeanMatchesSquaredDistance) {
  const auto p = DiscretePmf::on_integers({0.1, 0.2, 0.3, 0.4});
  const auto q = DiscretePmf::on_integers({0.25, 0.25, 0.25, 0.25});
  const double truth = std::pow(mmd_discrete(kUnit, p, q), 2);
  const int reps = 1000;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < reps; ++t) {
    const auto d = sample_distribution(p, 30, derive_seed(2, 2 * t));
    const auto e = sample_distribution(q, 40, derive_seed(2, 2 * t + 1));
    const double v = mmd2_unbiased(kUnit, d, e);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / (reps - 1));
  EXPECT_LE(std::abs(mean - truth), 3.0 * se);
}

TEST(MmdEstimatorTest, PairedUnbiasedMeanMatchesSquaredDistance) {
  const auto p = DiscretePmf::on_integers({0.1, 0.2, 0.3, 0.4});
  const auto q = DiscretePmf::on_integers({0.3, 0.3, 0.2, 0.2});
  const double truth = std::pow(mmd_discrete(kUnit, p, q), 2);
  const int reps = 1000;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < reps; ++t) {
    const auto d = sample_distribution(p, 25, derive_seed(3, 2 * t));
    const auto e = sample_distribution(q, 25, derive_seed(3, 2 * t + 1));
    const double v = mmd2_unbiased(kUnit, d, e);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / (reps - 1));
  EXPECT_LE(std::abs(mean - truth), 3.0 * se);
}

}  // namespace
}  // namespace distval
