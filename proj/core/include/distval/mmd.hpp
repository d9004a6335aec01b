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

#ifndef DISTVAL_MMD_HPP_
#define DISTVAL_MMD_HPP_

#include "distval/dataset.hpp"
#include "distval/kernel.hpp"

namespace distval {

// Biased (V-statistic) MMD estimator:
//   sqrt( mean k(D,D) + mean k(D',D') - 2 mean k(D,D') ),
// with the radicand clamped at zero.
double mmd_biased(const KernelConfig& cfg, const Dataset& d,
                  const Dataset& d_prime);

// mmd_biased with gram_sum_self(cfg, d_prime) supplied by the caller, for
// valuing many datasets against one reference.
double mmd_biased_with_self_sum(const KernelConfig& cfg, const Dataset& d,
                                const Dataset& d_prime,
                                double d_prime_self_sum);

// Unbiased U-statistic estimate of MMD^2 (diagonal terms excluded). May be
// negative. Both samples need at least two points. For equal sizes this is
// the paired statistic mean_{i != j} h(z_i, z_j) with
// h = k(x_i,x_j) + k(y_i,y_j) - k(x_i,y_j) - k(x_j,y_i); otherwise the
// cross term averages over all pairs.
double mmd2_unbiased(const KernelConfig& cfg, const Dataset& d,
                     const Dataset& d_prime);

// Exact population MMD between finite-support distributions.
double mmd_discrete(const KernelConfig& cfg, const DiscretePmf& p,
                    const DiscretePmf& p_prime);

// Squared exact MMD without the square root (may be slightly negative
// through rounding).
double mmd2_discrete_raw(const KernelConfig& cfg, const DiscretePmf& p,
                         const DiscretePmf& p_prime);

}  // namespace distval

#endif  // DISTVAL_MMD_HPP_
