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

#ifndef DISTVAL_HUBER_HPP_
#define DISTVAL_HUBER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "distval/dataset.hpp"
#include "distval/kernel.hpp"

namespace distval {

// Placeholder outlier for an uncontaminated model (epsilon = 0).
struct NullDistribution {
  bool operator==(const NullDistribution&) const = default;
};

// Weighted mixture of empirical sources: pick component i with probability
// weights[i], then a row of that component uniformly.
struct EmpiricalMixture {
  std::vector<Dataset> components;
  std::vector<double> weights;
};

// A sampling law: exact pmf, empirical dataset (rows drawn uniformly with
// replacement), a mixture of empirical sources, or the null marker.
using Distribution =
    std::variant<NullDistribution, DiscretePmf, Dataset, EmpiricalMixture>;

std::size_t distribution_dim(const Distribution& dist);
bool is_exact(const Distribution& dist);

// P = (1 - epsilon) * base + epsilon * outlier.
struct HuberSpec {
  double epsilon = 0.0;
  Distribution base;
  Distribution outlier;

  // Throws InputError unless 0 <= epsilon < 1, base is not null, base and
  // outlier share a dimension, and outlier is null only when epsilon = 0.
  void validate() const;
  std::size_t dim() const { return distribution_dim(base); }
};

struct MixtureWeights {
  std::vector<double> weights;

  static MixtureWeights uniform(std::size_t n);
  // Nonnegative and summing to one within 1e-12.
  void validate() const;
  std::size_t size() const { return weights.size(); }
};

// Mixture of Huber models over a common base: eps_w = sum w_i eps_i and
// Q_w = (1/eps_w) sum w_i eps_i Q_i. When eps_w = 0 the outlier is the null
// marker and the result is the base itself.
HuberSpec huber_mix(const std::vector<HuberSpec>& specs,
                    const MixtureWeights& w);

// The realized pmf (1 - eps) P* + eps Q. Exact mode only.
DiscretePmf realized_pmf(const HuberSpec& spec);

// Realized pmf of sum_i w_i P_i.
DiscretePmf mixture_pmf(const std::vector<HuberSpec>& specs,
                        const MixtureWeights& w);

// Value of a Huber model against its own base: -eps * d(P*, Q).
double huber_value_exact(const KernelConfig& cfg, const HuberSpec& spec);

// m i.i.d. draws: outlier with probability epsilon, else base.
Dataset sample_huber(const HuberSpec& spec, std::size_t m, std::uint64_t seed,
                     std::string id = "sample");

// Draws m points from any non-null distribution.
Dataset sample_distribution(const Distribution& dist, std::size_t m,
                            std::uint64_t seed, std::string id = "sample");

// Random pmf on {0..support_max}: independent U(0,1) weights, normalized.
DiscretePmf random_integer_pmf(std::size_t support_max, std::uint64_t seed);

struct HuberPopulation {
  DiscretePmf ground_truth;
  std::vector<HuberSpec> specs;

  std::vector<double> epsilons() const;
};

// A random ground truth on {0..support_max}, then per vendor a random
// outlier pmf and eps_i ~ U(0, eps_max).
HuberPopulation random_huber_population(std::size_t n,
                                        std::size_t support_max,
                                        double eps_max, std::uint64_t seed);

}  // namespace distval

#endif  // DISTVAL_HUBER_HPP_
