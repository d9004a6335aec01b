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

#include "distval/huber.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "distval/error.hpp"
#include "distval/mmd.hpp"
#include "distval/rng.hpp"

namespace distval {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same_distribution(const Distribution& a, const Distribution& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [](const NullDistribution&) { return true; },
          [&](const DiscretePmf& p) {
            return max_abs_difference(p, std::get<DiscretePmf>(b)) <=
                   DiscretePmf::kSumTolerance;
          },
          [&](const Dataset& d) {
            return d.same_points(std::get<Dataset>(b));
          },
          [&](const EmpiricalMixture& m) {
            const auto& o = std::get<EmpiricalMixture>(b);
            if (m.weights != o.weights) return false;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              if (!m.components[i].same_points(o.components[i])) return false;
            }
            return true;
          },
      },
      a);
}

const DiscretePmf& require_pmf(const Distribution& d, const char* what) {
  if (const auto* p = std::get_if<DiscretePmf>(&d)) return *p;
  throw UnsupportedModeError(std::string(what) +
                             " must be an exact DiscretePmf handle");
}

}  // namespace

std::size_t distribution_dim(const Distribution& dist) {
  return std::visit(
      overloaded{
          [](const NullDistribution&) -> std::size_t { return 0; },
          [](const DiscretePmf& p) { return p.dim(); },
          [](const Dataset& d) { return d.dim(); },
          [](const EmpiricalMixture& m) {
            return m.components.empty() ? std::size_t{0}
                                        : m.components.front().dim();
          },
      },
      dist);
}

bool is_exact(const Distribution& dist) {
  return std::holds_alternative<DiscretePmf>(dist);
}

void HuberSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw InputError("Huber epsilon must lie in [0, 1), got " +
                     std::to_string(epsilon));
  }
  if (std::holds_alternative<NullDistribution>(base)) {
    throw InputError("Huber base distribution is missing");
  }
  if (std::holds_alternative<NullDistribution>(outlier)) {
    if (epsilon != 0.0) {
      throw InputError("Huber outlier is missing but epsilon > 0");
    }
    return;
  }
  if (distribution_dim(base) != distribution_dim(outlier)) {
    throw InputError("Huber base and outlier dimensions differ");
  }
}

MixtureWeights MixtureWeights::uniform(std::size_t n) {
  if (n == 0) throw InputError("mixture weights: n must be positive");
  return {std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

void MixtureWeights::validate() const {
  if (weights.empty()) throw InputError("mixture weights are empty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InputError("mixture weights sum to " + std::to_string(total));
  }
}

HuberSpec huber_mix(const std::vector<HuberSpec>& specs,
                    const MixtureWeights& w) {
  if (specs.empty()) throw InputError("huber_mix: no components");
  if (specs.size() != w.size()) {
    throw InputError("huber_mix: " + std::to_string(specs.size()) +
                     " specs but " + std::to_string(w.size()) + " weights");
  }
  w.validate();
  for (const auto& s : specs) {
    s.validate();
    if (!same_distribution(s.base, specs.front().base)) {
      throw InputError("huber_mix: all components must share the same base");
    }
  }

  double eps_w = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    eps_w += w.weights[i] * specs[i].epsilon;
  }
  HuberSpec out{eps_w, specs.front().base, NullDistribution{}};
  if (eps_w == 0.0) {
    out.epsilon = 0.0;
    return out;
  }

  // Outlier weights w_i eps_i / eps_w over the contaminated components.
  std::vector<std::pair<double, const HuberSpec*>> parts;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double share = w.weights[i] * specs[i].epsilon / eps_w;
    if (share > 0.0) parts.emplace_back(share, &specs[i]);
  }
  const bool exact = is_exact(parts.front().second->outlier);
  for (const auto& [share, s] : parts) {
    if (is_exact(s->outlier) != exact) {
      throw InputError("huber_mix: cannot mix exact and empirical outliers");
    }
  }

  if (exact) {
    std::vector<std::pair<double, const DiscretePmf*>> pmfs;
    double total = 0.0;
    for (const auto& [share, s] : parts) total += share;
    for (const auto& [share, s] : parts) {
      pmfs.emplace_back(share / total, &std::get<DiscretePmf>(s->outlier));
    }
    out.outlier = DiscretePmf::mixture(pmfs);
    return out;
  }

  EmpiricalMixture mix;
  for (const auto& [share, s] : parts) {
    if (const auto* d = std::get_if<Dataset>(&s->outlier)) {
      mix.components.push_back(*d);
      mix.weights.push_back(share);
    } else {
      const auto& inner = std::get<EmpiricalMixture>(s->outlier);
      for (std::size_t k = 0; k < inner.components.size(); ++k) {
        mix.components.push_back(inner.components[k]);
        mix.weights.push_back(share * inner.weights[k]);
      }
    }
  }
  out.outlier = std::move(mix);
  return out;
}

DiscretePmf realized_pmf(const HuberSpec& spec) {
  spec.validate();
  const DiscretePmf& base = require_pmf(spec.base, "Huber base");
  if (spec.epsilon == 0.0) return base;
  const DiscretePmf& outlier = require_pmf(spec.outlier, "Huber outlier");
  return DiscretePmf::mixture(
      {{1.0 - spec.epsilon, &base}, {spec.epsilon, &outlier}});
}

DiscretePmf mixture_pmf(const std::vector<HuberSpec>& specs,
                        const MixtureWeights& w) {
  if (specs.size() != w.size()) {
    throw InputError("mixture_pmf: spec and weight counts differ");
  }
  w.validate();
  std::vector<DiscretePmf> realized;
  realized.reserve(specs.size());
  for (const auto& s : specs) realized.push_back(realized_pmf(s));
  std::vector<std::pair<double, const DiscretePmf*>> parts;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    parts.emplace_back(w.weights[i], &realized[i]);
  }
  return DiscretePmf::mixture(parts);
}

double huber_value_exact(const KernelConfig& cfg, const HuberSpec& spec) {
  spec.validate();
  const DiscretePmf& base = require_pmf(spec.base, "Huber base");
  if (spec.epsilon == 0.0) return 0.0;
  const DiscretePmf& outlier = require_pmf(spec.outlier, "Huber outlier");
  return -spec.epsilon * mmd_discrete(cfg, base, outlier);
}

namespace {

void draw_into(const Distribution& dist, Rng& rng, std::vector<double>& out) {
  std::visit(
      overloaded{
          [](const NullDistribution&) {
            throw InputError("cannot sample from the null distribution");
          },
          [&](const DiscretePmf& p) {
            auto x = p.point(p.quantile_index(rng.uniform()));
            out.insert(out.end(), x.begin(), x.end());
          },
          [&](const Dataset& d) {
            auto x = d.row(rng.below(d.size()));
            out.insert(out.end(), x.begin(), x.end());
          },
          [&](const EmpiricalMixture& m) {
            double u = rng.uniform() *
                       std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
            std::size_t k = 0;
            while (k + 1 < m.weights.size() && u >= m.weights[k]) {
              u -= m.weights[k];
              ++k;
            }
            const Dataset& d = m.components[k];
            auto x = d.row(rng.below(d.size()));
            out.insert(out.end(), x.begin(), x.end());
          },
      },
      dist);
}

}  // namespace

Dataset sample_distribution(const Distribution& dist, std::size_t m,
                            std::uint64_t seed, std::string id) {
  if (m == 0) throw InputError("sample size must be positive");
  const std::size_t dim = distribution_dim(dist);
  Rng rng(seed);
  std::vector<double> flat;
  flat.reserve(m * dim);
  for (std::size_t i = 0; i < m; ++i) draw_into(dist, rng, flat);
  return {std::move(id), dim, std::move(flat)};
}

Dataset sample_huber(const HuberSpec& spec, std::size_t m, std::uint64_t seed,
                     std::string id) {
  spec.validate();
  if (m == 0) throw InputError("sample size must be positive");
  Rng rng(seed);
  std::vector<double> flat;
  flat.reserve(m * spec.dim());
  for (std::size_t i = 0; i < m; ++i) {
    const bool from_outlier = rng.bernoulli(spec.epsilon);
    draw_into(from_outlier ? spec.outlier : spec.base, rng, flat);
  }
  return {std::move(id), spec.dim(), std::move(flat)};
}

namespace {

DiscretePmf draw_integer_pmf(std::size_t support_max, Rng& rng) {
  std::vector<double> weights(support_max + 1);
  double total = 0.0;
  for (auto& v : weights) {
    v = rng.uniform();
    total += v;
  }
  for (auto& v : weights) v /= total;
  return DiscretePmf::on_integers(weights);
}

}  // namespace

DiscretePmf random_integer_pmf(std::size_t support_max, std::uint64_t seed) {
  Rng rng(seed);
  return draw_integer_pmf(support_max, rng);
}

std::vector<double> HuberPopulation::epsilons() const {
  std::vector<double> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(s.epsilon);
  return out;
}

HuberPopulation random_huber_population(std::size_t n,
                                        std::size_t support_max,
                                        double eps_max, std::uint64_t seed) {
  if (n == 0) throw InputError("population needs at least one vendor");
  if (!(eps_max >= 0.0 && eps_max < 1.0)) {
    throw InputError("eps_max must lie in [0, 1)");
  }
  Rng rng(seed);
  HuberPopulation pop{draw_integer_pmf(support_max, rng), {}};
  pop.specs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DiscretePmf outlier = draw_integer_pmf(support_max, rng);
    const double eps = rng.uniform(0.0, eps_max);
    pop.specs.push_back(HuberSpec{eps, pop.ground_truth, std::move(outlier)});
  }
  return pop;
}

}  // namespace distval
