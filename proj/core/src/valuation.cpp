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

#include "distval/valuation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "distval/error.hpp"
#include "distval/mmd.hpp"
#include "distval/rng.hpp"

namespace distval {
namespace {

void require_common_dim(const std::vector<Dataset>& datasets) {
  if (datasets.empty()) throw InputError("reference: no datasets");
  for (const auto& d : datasets) {
    if (d.dim() != datasets.front().dim()) {
      throw InputError("reference: dataset '" + d.id() + "' has dimension " +
                       std::to_string(d.dim()) + ", expected " +
                       std::to_string(datasets.front().dim()));
    }
  }
}

}  // namespace

std::string_view to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::kGroundTruth:
      return "ground_truth";
    case ReferenceKind::kMixture:
      return "mixture";
    case ReferenceKind::kUniform:
      return "uniform";
  }
  return "unknown";
}

Reference Reference::ground_truth(Dataset data,
                                  std::optional<DiscretePmf> exact) {
  return {ReferenceKind::kGroundTruth, std::nullopt, std::move(data),
          std::move(exact)};
}

Reference build_uniform_reference(const std::vector<Dataset>& datasets,
                                  std::uint64_t seed) {
  require_common_dim(datasets);
  std::size_t m_min = datasets.front().size();
  for (const auto& d : datasets) m_min = std::min(m_min, d.size());

  const std::size_t dim = datasets.front().dim();
  std::vector<double> flat;
  flat.reserve(datasets.size() * m_min * dim);
  for (std::size_t v = 0; v < datasets.size(); ++v) {
    const Dataset& d = datasets[v];
    std::vector<std::size_t> rows(d.size());
    std::iota(rows.begin(), rows.end(), 0);
    Rng rng(derive_seed(seed, v));
    for (std::size_t i = 0; i < m_min; ++i) {
      std::swap(rows[i], rows[i + rng.below(rows.size() - i)]);
    }
    for (std::size_t i = 0; i < m_min; ++i) {
      auto x = d.row(rows[i]);
      flat.insert(flat.end(), x.begin(), x.end());
    }
  }
  return {ReferenceKind::kUniform, std::nullopt,
          Dataset("uniform_reference", dim, std::move(flat)), std::nullopt};
}

Reference build_mixture_reference(const std::vector<Dataset>& datasets,
                                  const MixtureWeights& w, std::size_t total,
                                  std::uint64_t seed) {
  require_common_dim(datasets);
  if (datasets.size() != w.size()) {
    throw InputError("mixture reference: " + std::to_string(datasets.size()) +
                     " datasets but " + std::to_string(w.size()) + " weights");
  }
  w.validate();
  if (total == 0) throw InputError("mixture reference: total must be >= 1");

  std::vector<double> cdf(w.weights.size());
  std::partial_sum(w.weights.begin(), w.weights.end(), cdf.begin());
  const std::size_t dim = datasets.front().dim();
  std::vector<double> flat;
  flat.reserve(total * dim);
  Rng rng(seed);
  for (std::size_t i = 0; i < total; ++i) {
    const double u = rng.uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t v = std::min<std::size_t>(
        static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    while (w.weights[v] == 0.0 && v > 0) --v;
    const Dataset& d = datasets[v];
    auto x = d.row(rng.below(d.size()));
    flat.insert(flat.end(), x.begin(), x.end());
  }
  return {ReferenceKind::kMixture, w,
          Dataset("mixture_reference", dim, std::move(flat)), std::nullopt};
}

double value_dataset(const KernelConfig& cfg, const Dataset& d,
                     const Reference& ref) {
  // Subtracting from 0.0 reports an exact match as +0 rather than -0.
  return 0.0 - mmd_biased(cfg, d, ref.data);
}

double value_distribution_exact(const KernelConfig& cfg, const DiscretePmf& p,
                                const DiscretePmf& ref) {
  return 0.0 - mmd_discrete(cfg, p, ref);
}

double approximation_error_bound(const std::vector<HuberSpec>& specs,
                                 const MixtureWeights& w,
                                 const KernelConfig& cfg) {
  const HuberSpec mixed = huber_mix(specs, w);
  if (mixed.epsilon == 0.0) return 0.0;
  const auto* base = std::get_if<DiscretePmf>(&mixed.base);
  const auto* outlier = std::get_if<DiscretePmf>(&mixed.outlier);
  if (base == nullptr || outlier == nullptr) {
    throw UnsupportedModeError(
        "approximation_error_bound needs exact DiscretePmf handles");
  }
  return mixed.epsilon * mmd_discrete(cfg, *outlier, *base);
}

}  // namespace distval
