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

#include "distval/policy.hpp"

#include <algorithm>
#include <cmath>

#include "distval/error.hpp"
#include "distval/mmd.hpp"

namespace distval {
namespace {

void require_sizes(std::size_t m, std::size_t m_prime, std::size_t m_ref) {
  if (m == 0 || m_prime == 0 || m_ref == 0) {
    throw InputError("sample sizes must be at least 1");
  }
}

}  // namespace

void PolicyParams::validate() const {
  if (!(eps_upsilon >= 0.0)) throw InputError("eps_upsilon must be >= 0");
  if (!(eps_bias >= 0.0)) throw InputError("eps_bias must be >= 0");
  if (!(k_bound > 0.0)) throw InputError("k_bound must be > 0");
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kConclude ? "Conclude" : "Inconclusive";
}

double criterion_margin_gt(const PolicyParams& p, std::size_t m,
                           std::size_t m_prime, std::size_t m_star) {
  p.validate();
  require_sizes(m, m_prime, m_star);
  const double k = p.k_bound;
  return p.eps_upsilon +
         2.0 * (p.eps_bias + std::sqrt(k / static_cast<double>(m)) +
                std::sqrt(k / static_cast<double>(m_prime)) +
                2.0 * std::sqrt(k / static_cast<double>(m_star)));
}

double criterion_margin_mix(const PolicyParams& p, std::size_t m,
                            std::size_t m_prime, std::size_t m_n,
                            double huber_gap) {
  if (!(huber_gap >= 0.0)) throw InputError("huber_gap must be >= 0");
  return criterion_margin_gt(p, m, m_prime, m_n) + 2.0 * huber_gap;
}

double confidence_delta(const PolicyParams& p, std::size_t m,
                        std::size_t m_prime, std::size_t m_ref) {
  p.validate();
  require_sizes(m, m_prime, m_ref);
  const double mbar = static_cast<double>(std::max(m, m_prime));
  const double mr = static_cast<double>(m_ref);
  return 2.0 * std::exp(-p.eps_bias * p.eps_bias * mbar * mr /
                        (2.0 * p.k_bound * (mbar + mr)));
}

DecisionReport compare(const KernelConfig& cfg, const PolicyParams& p,
                       const Dataset& d, const Dataset& d_prime,
                       const Reference& ref, const CompareOptions& opts) {
  p.validate();
  if (opts.huber_gap && !(*opts.huber_gap >= 0.0)) {
    throw InputError("huber_gap must be >= 0");
  }
  DecisionReport r;
  r.reference_kind = std::string(to_string(ref.kind));
  const double ref_self = gram_sum_self(cfg, ref.data);
  r.value = 0.0 - mmd_biased_with_self_sum(cfg, d, ref.data, ref_self);
  r.value_prime = 0.0 - mmd_biased_with_self_sum(cfg, d_prime, ref.data, ref_self);
  r.observed_gap = r.value - r.value_prime;

  const std::size_t m = d.size();
  const std::size_t mp = d_prime.size();
  const std::size_t m_ref = ref.data.size();
  r.delta = confidence_delta(p, m, mp, m_ref);
  r.confidence = std::clamp(1.0 - 2.0 * r.delta, 0.0, 1.0);

  bool allow_conclude = true;
  if (ref.kind == ReferenceKind::kGroundTruth) {
    r.margin = criterion_margin_gt(p, m, mp, m_ref);
  } else {
    double gap = 0.0;
    if (opts.huber_gap) {
      gap = *opts.huber_gap;
    } else {
      r.bound_unavailable = true;
      allow_conclude = opts.assume_zero_gap;
    }
    r.extra_term = 2.0 * gap;
    r.margin = criterion_margin_mix(p, m, mp, m_ref, gap);
  }
  r.verdict = allow_conclude && r.observed_gap > r.margin
                  ? Verdict::kConclude
                  : Verdict::kInconclusive;
  return r;
}

std::vector<std::pair<std::string, double>> rank_vendors(
    const KernelConfig& cfg, const std::vector<Dataset>& datasets,
    const Reference& ref) {
  std::vector<std::pair<std::string, double>> out(datasets.size());
  const double ref_self = gram_sum_self(cfg, ref.data);
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    out[i] = {datasets[i].id(),
              0.0 - mmd_biased_with_self_sum(cfg, datasets[i], ref.data, ref_self)};
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace distval
