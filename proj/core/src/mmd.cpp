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

#include "distval/mmd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "distval/error.hpp"

namespace distval {
namespace {

// Signed measure p - p_prime on the union of both supports.
struct SignedMeasure {
  std::vector<const double*> atoms;
  std::vector<double> weights;
};

SignedMeasure difference(const DiscretePmf& p, const DiscretePmf& p_prime) {
  SignedMeasure out;
  std::map<std::vector<double>, std::size_t> index;
  auto add = [&](const DiscretePmf& pmf, double sign) {
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      auto x = pmf.point(i);
      auto [it, inserted] =
          index.emplace(std::vector<double>(x.begin(), x.end()),
                        out.weights.size());
      if (inserted) {
        out.atoms.push_back(x.data());
        out.weights.push_back(0.0);
      }
      out.weights[it->second] += sign * pmf.prob(i);
    }
  };
  add(p, 1.0);
  add(p_prime, -1.0);
  return out;
}

void check_pair(const Dataset& d, const Dataset& d_prime) {
  if (d.dim() != d_prime.dim()) {
    throw InputError("mmd: dimension mismatch between '" + d.id() + "' (" +
                     std::to_string(d.dim()) + ") and '" + d_prime.id() +
                     "' (" + std::to_string(d_prime.dim()) + ")");
  }
}

}  // namespace

double mmd_biased(const KernelConfig& cfg, const Dataset& d,
                  const Dataset& d_prime) {
  cfg.validate();
  check_pair(d, d_prime);
  if (d.same_points(d_prime)) return 0.0;
  return mmd_biased_with_self_sum(cfg, d, d_prime,
                                  gram_sum_self(cfg, d_prime));
}

double mmd_biased_with_self_sum(const KernelConfig& cfg, const Dataset& d,
                                const Dataset& d_prime,
                                double d_prime_self_sum) {
  cfg.validate();
  check_pair(d, d_prime);
  if (d.same_points(d_prime)) return 0.0;
  const double m = static_cast<double>(d.size());
  const double mp = static_cast<double>(d_prime.size());
  const double radicand = gram_sum_self(cfg, d) / (m * m) +
                          d_prime_self_sum / (mp * mp) -
                          2.0 * gram_sum(cfg, d, d_prime) / (m * mp);
  return std::sqrt(std::max(0.0, radicand));
}

double mmd2_unbiased(const KernelConfig& cfg, const Dataset& d,
                     const Dataset& d_prime) {
  cfg.validate();
  check_pair(d, d_prime);
  if (d.size() < 2 || d_prime.size() < 2) {
    throw InputError("mmd2_unbiased needs at least two points per sample");
  }
  const double m = static_cast<double>(d.size());
  const double mp = static_cast<double>(d_prime.size());
  // RBF diagonal terms are k(x, x) = 1.
  const double within = (gram_sum_self(cfg, d) - m) / (m * (m - 1.0));
  const double within_p = (gram_sum_self(cfg, d_prime) - mp) / (mp * (mp - 1.0));
  double cross = gram_sum(cfg, d, d_prime);
  if (d.size() == d_prime.size()) {
    // Paired statistic: average of h(z_i, z_j) over i != j, which also drops
    // the cross terms k(x_i, y_i).
    double paired = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      paired += kernel_eval(cfg, d.row(i), d_prime.row(i));
    }
    cross = (cross - paired) / (m * (m - 1.0));
  } else {
    cross /= m * mp;
  }
  return within + within_p - 2.0 * cross;
}

double mmd2_discrete_raw(const KernelConfig& cfg, const DiscretePmf& p,
                         const DiscretePmf& p_prime) {
  cfg.validate();
  if (p.dim() != p_prime.dim()) {
    throw InputError("mmd_discrete: support dimension mismatch");
  }
  // E k(X,X') - 2 E k(X,Y) + E k(Y,Y') as the quadratic form r^T K r of the
  // difference r = p - p', which is exactly zero when p = p'.
  const SignedMeasure r = difference(p, p_prime);
  const std::size_t dim = p.dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    if (r.weights[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < r.weights.size(); ++j) {
      if (r.weights[j] == 0.0) continue;
      row += r.weights[j] * kernel_eval(cfg, {r.atoms[i], dim},
                                        {r.atoms[j], dim});
    }
    acc += r.weights[i] * row;
  }
  return acc;
}

double mmd_discrete(const KernelConfig& cfg, const DiscretePmf& p,
                    const DiscretePmf& p_prime) {
  return std::sqrt(std::max(0.0, mmd2_discrete_raw(cfg, p, p_prime)));
}

}  // namespace distval
