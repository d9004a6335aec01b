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

#ifndef DISTVAL_POLICY_HPP_
#define DISTVAL_POLICY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "distval/dataset.hpp"
#include "distval/kernel.hpp"
#include "distval/valuation.hpp"

namespace distval {

struct PolicyParams {
  double eps_upsilon = 0.0;  // decision margin
  double eps_bias = 0.0;     // slack in the estimator's convergence bound
  double k_bound = 1.0;      // K

  void validate() const;
};

enum class Verdict { kConclude, kInconclusive };

std::string_view to_string(Verdict v);

// Outcome of comparing D against D'. Conclude asserts
// Upsilon(P) > Upsilon(P') + eps_upsilon with probability >= confidence.
struct DecisionReport {
  double margin = 0.0;        // Delta (ground truth) or Delta' (mixture)
  double observed_gap = 0.0;  // nu(D) - nu(D')
  double delta = 0.0;
  double confidence = 0.0;    // max(0, 1 - 2 delta)
  Verdict verdict = Verdict::kInconclusive;
  double extra_term = 0.0;    // 2 eps_w d(Q_w, P*) when known
  bool bound_unavailable = false;
  double value = 0.0;         // nu(D)
  double value_prime = 0.0;   // nu(D')
  std::string reference_kind;
};

// Delta = eps_U + 2 [eps_bias + sqrt(K/m) + sqrt(K/m') + 2 sqrt(K/m*)].
double criterion_margin_gt(const PolicyParams& p, std::size_t m,
                           std::size_t m_prime, std::size_t m_star);

// Delta' = Delta(m* = m_N) + 2 * huber_gap, huber_gap = eps_w d(Q_w, P*).
double criterion_margin_mix(const PolicyParams& p, std::size_t m,
                            std::size_t m_prime, std::size_t m_n,
                            double huber_gap);

// delta = 2 exp(-eps_bias^2 mbar m_ref / (2K (mbar + m_ref))), mbar = max(m, m').
double confidence_delta(const PolicyParams& p, std::size_t m,
                        std::size_t m_prime, std::size_t m_ref);

struct CompareOptions {
  // eps_w d(Q_w, P*) for a non-ground-truth reference, if known.
  std::optional<double> huber_gap;
  // Treat an unknown gap as zero; the report keeps bound_unavailable set.
  bool assume_zero_gap = false;
};

DecisionReport compare(const KernelConfig& cfg, const PolicyParams& p,
                       const Dataset& d, const Dataset& d_prime,
                       const Reference& ref, const CompareOptions& opts = {});

// Vendors by value_dataset, descending; ties by id ascending.
std::vector<std::pair<std::string, double>> rank_vendors(
    const KernelConfig& cfg, const std::vector<Dataset>& datasets,
    const Reference& ref);

}  // namespace distval

#endif  // DISTVAL_POLICY_HPP_
