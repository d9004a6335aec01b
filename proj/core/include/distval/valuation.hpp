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

#ifndef DISTVAL_VALUATION_HPP_
#define DISTVAL_VALUATION_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "distval/dataset.hpp"
#include "distval/huber.hpp"
#include "distval/kernel.hpp"

namespace distval {

enum class ReferenceKind { kGroundTruth, kMixture, kUniform };

std::string_view to_string(ReferenceKind kind);

// The sample (and optionally the exact pmf) that datasets are valued against.
struct Reference {
  ReferenceKind kind = ReferenceKind::kGroundTruth;
  std::optional<MixtureWeights> weights;  // set iff kind == kMixture
  Dataset data;
  std::optional<DiscretePmf> exact;

  static Reference ground_truth(Dataset data,
                                std::optional<DiscretePmf> exact = {});
};

// Union of seeded uniform subsamples (without replacement) of size
// min_i |D_i| from every dataset.
Reference build_uniform_reference(const std::vector<Dataset>& datasets,
                                  std::uint64_t seed);

// `total` draws: vendor i with probability w_i, then a uniform row of D_i.
Reference build_mixture_reference(const std::vector<Dataset>& datasets,
                                  const MixtureWeights& w, std::size_t total,
                                  std::uint64_t seed);

// -mmd_biased(D, ref.data); lies in [-sqrt(2K), 0].
double value_dataset(const KernelConfig& cfg, const Dataset& d,
                     const Reference& ref);

// -mmd_discrete(P, ref).
double value_distribution_exact(const KernelConfig& cfg, const DiscretePmf& p,
                                const DiscretePmf& ref);

// eps_w * d(Q_w, P*): worst-case error of using the w-mixture in place of
// the ground truth. Exact mode only; zero when eps_w = 0.
double approximation_error_bound(const std::vector<HuberSpec>& specs,
                                 const MixtureWeights& w,
                                 const KernelConfig& cfg);

}  // namespace distval

#endif  // DISTVAL_VALUATION_HPP_
