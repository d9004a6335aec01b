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

#include "distval/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "distval/error.hpp"

namespace distval {
namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InputError(std::string(what) + " contains a non-finite value");
    }
  }
}

}  // namespace

Dataset::Dataset(std::string id, std::size_t dim, std::vector<double> flat)
    : id_(std::move(id)), dim_(dim), flat_(std::move(flat)) {
  if (dim_ == 0) throw InputError("dataset '" + id_ + "': dimension is zero");
  if (flat_.empty()) throw InputError("dataset '" + id_ + "' is empty");
  if (flat_.size() % dim_ != 0) {
    throw InputError("dataset '" + id_ + "': value count " +
                     std::to_string(flat_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  require_finite(flat_, "dataset");
}

Dataset Dataset::from_points(std::string id, const std::vector<Point>& points) {
  if (points.empty()) throw InputError("dataset '" + id + "' is empty");
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw InputError("dataset '" + id + "': points have unequal dimension");
    }
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return {std::move(id), dim, std::move(flat)};
}

Dataset Dataset::from_values(std::string id, const std::vector<double>& values) {
  return {std::move(id), 1, values};
}

Point Dataset::point(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

Dataset Dataset::prefix(std::size_t count) const {
  if (count == 0 || count > size()) {
    throw InputError("dataset '" + id_ + "': prefix size out of range");
  }
  return {id_, dim_,
          std::vector<double>(flat_.begin(),
                              flat_.begin() + static_cast<std::ptrdiff_t>(
                                                  count * dim_))};
}

DiscretePmf::DiscretePmf(std::size_t dim, std::vector<double> support_flat,
                         std::vector<double> probs)
    : dim_(dim), support_(std::move(support_flat)), probs_(std::move(probs)) {
  if (dim_ == 0) throw InputError("pmf: dimension is zero");
  if (probs_.empty()) throw InputError("pmf: empty support");
  if (support_.size() != probs_.size() * dim_) {
    throw InputError("pmf: support size does not match probability count");
  }
  require_finite(support_, "pmf support");
  require_finite(probs_, "pmf probabilities");
  double total = 0.0;
  for (double p : probs_) {
    if (p < 0.0) throw InputError("pmf: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InputError("pmf: probabilities sum to " + std::to_string(total));
  }
  std::set<std::vector<double>> seen;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    auto p = point(i);
    if (!seen.emplace(p.begin(), p.end()).second) {
      throw InputError("pmf: duplicate support point");
    }
  }
  cdf_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
}

DiscretePmf DiscretePmf::point_mass(const Point& x) {
  return {x.size(), x, {1.0}};
}

DiscretePmf DiscretePmf::on_integers(const std::vector<double>& probs) {
  std::vector<double> support(probs.size());
  std::iota(support.begin(), support.end(), 0.0);
  return {1, std::move(support), probs};
}

DiscretePmf DiscretePmf::mixture(
    const std::vector<std::pair<double, const DiscretePmf*>>& parts) {
  if (parts.empty()) throw InputError("pmf mixture: no components");
  const std::size_t dim = parts.front().second->dim();
  double total_weight = 0.0;
  // Support order: first appearance across components.
  std::map<std::vector<double>, std::size_t> index;
  std::vector<double> support;
  std::vector<double> probs;
  for (const auto& [w, pmf] : parts) {
    if (pmf->dim() != dim) throw InputError("pmf mixture: dimension mismatch");
    if (w < 0.0) throw InputError("pmf mixture: negative weight");
    total_weight += w;
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < pmf->size(); ++i) {
      auto p = pmf->point(i);
      std::vector<double> key(p.begin(), p.end());
      auto [it, inserted] = index.emplace(key, probs.size());
      if (inserted) {
        support.insert(support.end(), key.begin(), key.end());
        probs.push_back(0.0);
      }
      probs[it->second] += w * pmf->prob(i);
    }
  }
  if (std::abs(total_weight - 1.0) > kSumTolerance) {
    throw InputError("pmf mixture: weights do not sum to one");
  }
  return {dim, std::move(support), std::move(probs)};
}

double DiscretePmf::mass_at(std::span<const double> x) const {
  if (x.size() != dim_) return 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    auto p = point(i);
    if (std::equal(p.begin(), p.end(), x.begin())) return probs_[i];
  }
  return 0.0;
}

std::size_t DiscretePmf::quantile_index(double u) const {
  const double target = u * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  std::size_t idx = static_cast<std::size_t>(it - cdf_.begin());
  if (idx >= probs_.size()) idx = probs_.size() - 1;
  // Never land on a zero-mass atom.
  while (probs_[idx] == 0.0 && idx > 0) --idx;
  return idx;
}

double max_abs_difference(const DiscretePmf& a, const DiscretePmf& b) {
  if (a.dim() != b.dim()) throw InputError("pmf comparison: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.prob(i) - b.mass_at(a.point(i))));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, std::abs(b.prob(i) - a.mass_at(b.point(i))));
  }
  return worst;
}

}  // namespace distval
