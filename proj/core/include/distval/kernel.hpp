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

#ifndef DISTVAL_KERNEL_HPP_
#define DISTVAL_KERNEL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "distval/dataset.hpp"

namespace distval {

enum class KernelFamily { kRbf };

// Kernel family, bandwidth and the bound K on kernel values.
// For RBF, k(x, y) = exp(-|x - y|^2 / (2 sigma^2)) and K = 1.
struct KernelConfig {
  KernelFamily family = KernelFamily::kRbf;
  double sigma = 1.0;
  double k_bound = 1.0;

  static KernelConfig rbf(double sigma);
  // Throws InputError for sigma <= 0 or a k_bound inconsistent with family.
  void validate() const;
};

double kernel_eval(const KernelConfig& cfg, std::span<const double> x,
                   std::span<const double> y);

// Sum over x in a, w in b of k(x, w). Rows are reduced in index order with a
// fixed within-row order, so the result does not depend on the worker count.
// Inputs with many repeated rows are summed over distinct rows weighted by
// multiplicity.
double gram_sum(const KernelConfig& cfg, const Dataset& a, const Dataset& b);

// gram_sum(cfg, a, a) using the symmetry of the kernel.
double gram_sum_self(const KernelConfig& cfg, const Dataset& a);

// Median pairwise Euclidean distance over a seeded subsample of
// min(cap, |pooled|) points. Throws InputError when every sampled pairwise
// distance is zero; supply sigma explicitly in that case.
double median_heuristic(const Dataset& pooled, std::size_t cap,
                        std::uint64_t seed);

inline constexpr std::size_t kDefaultMedianCap = 1000;

}  // namespace distval

#endif  // DISTVAL_KERNEL_HPP_
