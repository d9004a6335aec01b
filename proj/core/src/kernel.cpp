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

#include "distval/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "distval/error.hpp"
#include "distval/parallel.hpp"
#include "distval/rng.hpp"

namespace distval {
namespace {

double squared_distance(const double* x, const double* y, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = x[k] - y[k];
    acc += diff * diff;
  }
  return acc;
}

void require_compatible(const Dataset& a, const Dataset& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: '" + a.id() + "' has " +
                     std::to_string(a.dim()) + ", '" + b.id() + "' has " +
                     std::to_string(b.dim()));
  }
}

// Distinct rows with multiplicities. Samples from discrete distributions
// repeat heavily, and summing over distinct pairs is then much cheaper.
// `counts` stays empty when compression does not pay off.
struct Weighted {
  std::vector<double> unique;
  std::vector<double> counts;
  const double* points = nullptr;
  std::size_t rows = 0;

  std::size_t size() const { return rows; }
  double weight(std::size_t i) const { return counts.empty() ? 1.0 : counts[i]; }
};

constexpr std::size_t kCompressMinRows = 32;

Weighted compress(const Dataset& d) {
  Weighted w;
  w.points = d.flat().data();
  w.rows = d.size();
  if (d.size() < kCompressMinRows) return w;
  const std::size_t dim = d.dim();
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](std::size_t i, std::size_t j) {
    const auto x = d.row(i);
    const auto y = d.row(j);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return row_less(i, j) || (!row_less(j, i) && i < j);
  });
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || row_less(order[k - 1], order[k])) starts.push_back(k);
  }
  if (starts.size() * 2 > d.size()) return w;
  starts.push_back(order.size());
  w.unique.reserve((starts.size() - 1) * dim);
  for (std::size_t g = 0; g + 1 < starts.size(); ++g) {
    const auto x = d.row(order[starts[g]]);
    w.unique.insert(w.unique.end(), x.begin(), x.end());
    w.counts.push_back(static_cast<double>(starts[g + 1] - starts[g]));
  }
  w.points = w.unique.data();
  w.rows = w.counts.size();
  return w;
}

}  // namespace

KernelConfig KernelConfig::rbf(double sigma) {
  KernelConfig cfg;
  cfg.sigma = sigma;
  cfg.validate();
  return cfg;
}

void KernelConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InputError("kernel bandwidth sigma must be positive and finite");
  }
  if (family == KernelFamily::kRbf && k_bound != 1.0) {
    throw InputError("RBF kernel requires k_bound = 1");
  }
}

double kernel_eval(const KernelConfig& cfg, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("kernel_eval: dimension mismatch (" +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  const double inv = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  return std::exp(-squared_distance(x.data(), y.data(), x.size()) * inv);
}

double gram_sum(const KernelConfig& cfg, const Dataset& a, const Dataset& b) {
  require_compatible(a, b);
  const Weighted wa = compress(a);
  const Weighted wb = compress(b);
  const std::size_t dim = a.dim();
  const std::size_t nb = wb.size();
  const double inv = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  const double* bdata = wb.points;
  std::vector<double> row_sums(wa.size(), 0.0);
  parallel_for(wa.size(), [&](std::size_t i) {
    const double* x = wa.points + i * dim;
    double acc = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      acc += wb.weight(j) *
             std::exp(-squared_distance(x, bdata + j * dim, dim) * inv);
    }
    row_sums[i] = wa.weight(i) * acc;
  });
  return std::accumulate(row_sums.begin(), row_sums.end(), 0.0);
}

double gram_sum_self(const KernelConfig& cfg, const Dataset& a) {
  const Weighted wa = compress(a);
  const std::size_t dim = a.dim();
  const std::size_t n = wa.size();
  const double inv = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  const double* data = wa.points;
  std::vector<double> row_sums(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const double* x = data + i * dim;
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += wa.weight(j) *
             std::exp(-squared_distance(x, data + j * dim, dim) * inv);
    }
    row_sums[i] = wa.weight(i) * acc;
  });
  double diagonal = static_cast<double>(n);
  if (!wa.counts.empty()) {
    diagonal = 0.0;
    for (double c : wa.counts) diagonal += c * c;
  }
  return diagonal + 2.0 * std::accumulate(row_sums.begin(), row_sums.end(), 0.0);
}

double median_heuristic(const Dataset& pooled, std::size_t cap,
                        std::uint64_t seed) {
  if (pooled.size() < 2) {
    throw InputError("median heuristic needs at least two points");
  }
  if (cap < 2) throw InputError("median heuristic cap must be at least 2");

  std::vector<std::size_t> rows(pooled.size());
  std::iota(rows.begin(), rows.end(), 0);
  if (rows.size() > cap) {
    Rng rng(seed);
    for (std::size_t i = 0; i < cap; ++i) {
      std::swap(rows[i], rows[i + rng.below(rows.size() - i)]);
    }
    rows.resize(cap);
  }

  std::vector<double> dists;
  dists.reserve(rows.size() * (rows.size() - 1) / 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      dists.push_back(std::sqrt(squared_distance(pooled.row(rows[i]).data(),
                                                 pooled.row(rows[j]).data(),
                                                 pooled.dim())));
    }
  }
  auto median_of = [](std::vector<double>& v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                     v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower =
        *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
  };

  double median = median_of(dists);
  if (median > 0.0) return median;
  // Mostly-duplicate data: fall back to the median of the nonzero distances.
  std::erase(dists, 0.0);
  if (dists.empty()) {
    throw InputError(
        "median heuristic: all points coincide; supply sigma explicitly");
  }
  return median_of(dists);
}

}  // namespace distval
