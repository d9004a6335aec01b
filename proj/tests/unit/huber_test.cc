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

#include "distval/huber.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "distval/error.hpp"
#include "distval/mmd.hpp"
#include "distval/rng.hpp"
#include "oracles.hpp"

namespace distval {
namespace {

const KernelConfig kUnit = KernelConfig::rbf(1.0);

HuberSpec delta_spec(double eps, double base_at, double outlier_at) {
  return {eps, DiscretePmf::point_mass({base_at}),
          DiscretePmf::point_mass({outlier_at})};
}

TEST(HuberSpecTest, Validation) {
  EXPECT_THROW(delta_spec(1.0, 0, 1).validate(), InputError);
  EXPECT_THROW(delta_spec(-0.1, 0, 1).validate(), InputError);
  HuberSpec bad{0.2, DiscretePmf::point_mass({0.0}),
                DiscretePmf::point_mass({0.0, 1.0})};
  EXPECT_THROW(bad.validate(), InputError);
  EXPECT_NO_THROW(delta_spec(0.0, 0, 1).validate());
}

TEST(MixtureWeightsTest, Validation) {
  EXPECT_THROW((MixtureWeights{{0.5, 0.6}}).validate(), InputError);
  EXPECT_THROW((MixtureWeights{{-0.1, 1.1}}).validate(), InputError);
  EXPECT_NO_THROW(MixtureWeights::uniform(3).validate());
}

TEST(HuberMixTest, AveragesEpsilon) {
  const auto mixed =
      huber_mix({delta_spec(0.2, 0, 1), delta_spec(0.4, 0, 2)},
                MixtureWeights::uniform(2));
  EXPECT_NEAR(mixed.epsilon, 0.3, 1e-15);
}

TEST(HuberMixTest, NoContaminationGivesBase) {
  const auto mixed =
      huber_mix({delta_spec(0.0, 0, 1), delta_spec(0.0, 0, 2)},
                MixtureWeights::uniform(2));
  EXPECT_EQ(mixed.epsilon, 0.0);
  EXPECT_TRUE(std::holds_alternative<NullDistribution>(mixed.outlier));
  const auto p = realized_pmf(mixed);
  EXPECT_EQ(max_abs_difference(p, DiscretePmf::point_mass({0.0})), 0.0);
}

TEST(HuberMixTest, OneHotWeightSelectsSpec) {
  const auto a = delta_spec(0.2, 0, 1);
  const auto mixed = huber_mix({a, delta_spec(0.4, 0, 2)}, {{1.0, 0.0}});
  EXPECT_EQ(mixed.epsilon, 0.2);
  EXPECT_EQ(max_abs_difference(realized_pmf(mixed), realized_pmf(a)), 0.0);
}

TEST(HuberMixTest, MismatchedBasesRejected) {
  EXPECT_THROW(huber_mix({delta_spec(0.2, 0, 1), delta_spec(0.4, 3, 2)},
                         MixtureWeights::uniform(2)),
               InputError);
}

TEST(HuberMixTest, ClosureOnRandomInstances) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const auto pop = random_huber_population(n, 10, 0.9, rng.next());
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) total += (x = rng.uniform());
    for (auto& x : w) x /= total;
    const MixtureWeights mw{w};
    const auto direct = oracle::dense(mixture_pmf(pop.specs, mw), 11);
    std::vector<double> want(11, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto pi = oracle::dense(realized_pmf(pop.specs[i]), 11);
      for (std::size_t k = 0; k < 11; ++k) want[k] += w[i] * pi[k];
    }
    const auto via_mix = oracle::dense(realized_pmf(huber_mix(pop.specs, mw)), 11);
    for (std::size_t k = 0; k < 11; ++k) {
      EXPECT_NEAR(via_mix[k], want[k], 1e-12);
      EXPECT_NEAR(direct[k], want[k], 1e-12);
    }
  }
}

TEST(HuberValueTest, NoContaminationIsZero) {
  EXPECT_EQ(huber_value_exact(kUnit, delta_spec(0.0, 0, 1)), 0.0);
}

TEST(HuberValueTest, PointMassExample) {
  EXPECT_NEAR(huber_value_exact(kUnit, delta_spec(0.3, 0, 1)),
              -0.266128693025998201, 1e-15);
}

TEST(HuberValueTest, OutlierEqualToBaseIsZero) {
  EXPECT_EQ(huber_value_exact(kUnit, delta_spec(0.6, 2, 2)), 0.0);
}

TEST(HuberValueTest, EmpiricalHandleUnsupported) {
  HuberSpec s{0.3, Dataset::from_values("b", {0.0}),
              Dataset::from_values("q", {1.0})};
  EXPECT_THROW(huber_value_exact(kUnit, s), UnsupportedModeError);
}

TEST(HuberValueTest, IdentityAgainstMixturePmf) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const auto pop = random_huber_population(1, 10, 0.99, rng.next());
    const auto& spec = pop.specs[0];
    const double lhs = huber_value_exact(kUnit, spec);
    const double d = mmd_discrete(kUnit, realized_pmf(spec), pop.ground_truth);
    EXPECT_LE(std::abs(lhs + d), 1e-9);
  }
}

TEST(HuberValueTest, LinearInEpsilon) {
  const auto base = random_integer_pmf(10, 1);
  const auto q = random_integer_pmf(10, 2);
  const double v1 = -huber_value_exact(kUnit, {0.1, base, q});
  const double v2 = -huber_value_exact(kUnit, {0.2, base, q});
  const double v3 = -huber_value_exact(kUnit, {0.6, base, q});
  EXPECT_NEAR(v2, 2.0 * v1, 1e-12);
  EXPECT_NEAR(v3, 6.0 * v1, 1e-12);
}

TEST(SampleHuberTest, NoContaminationDrawsBase) {
  const auto d = sample_huber(delta_spec(0.0, 0, 1), 1000, 9);
  for (double x : d.flat()) EXPECT_EQ(x, 0.0);
}

TEST(SampleHuberTest, ContaminationFraction) {
  const auto d = sample_huber(delta_spec(0.5, 0, 1), 100000, 10);
  double ones = 0.0;
  for (double x : d.flat()) ones += x;
  EXPECT_NEAR(ones / 100000.0, 0.5, 0.01);
}

TEST(SampleHuberTest, Deterministic) {
  const auto spec = HuberSpec{0.3, random_integer_pmf(10, 3),
                              random_integer_pmf(10, 4)};
  EXPECT_TRUE(sample_huber(spec, 500, 77).same_points(sample_huber(spec, 500, 77)));
  EXPECT_FALSE(sample_huber(spec, 500, 77).same_points(sample_huber(spec, 500, 78)));
}

TEST(SampleHuberTest, EmpiricalSourceWithReplacement) {
  HuberSpec s{0.5, Dataset::from_values("b", {0.0, 1.0}),
              Dataset::from_values("q", {10.0})};
  const auto d = sample_huber(s, 2000, 11);
  std::size_t tens = 0;
  for (double x : d.flat()) {
    EXPECT_TRUE(x == 0.0 || x == 1.0 || x == 10.0);
    tens += x == 10.0;
  }
  EXPECT_NEAR(tens / 2000.0, 0.5, 0.05);
}

TEST(RandomPopulationTest, SingleVendorValid) {
  const auto pop = random_huber_population(1, 10, 0.5, 1);
  ASSERT_EQ(pop.specs.size(), 1u);
  double s = 0.0;
  for (double p : pop.ground_truth.probs()) s += p;
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_NO_THROW(pop.specs[0].validate());
}

TEST(RandomPopulationTest, ReproducibleEpsilons) {
  const auto a = random_huber_population(5, 10, 0.5, 99);
  const auto b = random_huber_population(5, 10, 0.5, 99);
  EXPECT_EQ(a.epsilons(), b.epsilons());
  for (double e : a.epsilons()) {
    EXPECT_GE(e, 0.0);
    EXPECT_LT(e, 0.5);
  }
}

TEST(RandomPopulationTest, SupportIsIntegerRange) {
  const auto pop = random_huber_population(3, 10, 0.5, 5);
  ASSERT_EQ(pop.ground_truth.size(), 11u);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_EQ(pop.ground_truth.point(i)[0], static_cast<double>(i));
  }
  for (const auto& s : pop.specs) {
    EXPECT_EQ(std::get<DiscretePmf>(s.outlier).size(), 11u);
  }
}

}  // namespace
}  // namespace distval
