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

#ifndef DISTVAL_EXPERIMENTS_HPP_
#define DISTVAL_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "distval/dataset.hpp"
#include "distval/kernel.hpp"
#include "distval/report.hpp"

namespace distval {

enum class ExperimentName {
  kCorrelation,
  kConvergence,
  kPolicySoundness,
  kIncentiveCompat,
  kGameVerify,
};

std::string_view to_string(ExperimentName name);
// Accepts "correlation", "convergence", "policy_soundness" (or "policy"),
// "incentive" (or "incentive_compat", "ic") and "game_verify" (or "game").
ExperimentName parse_experiment_name(std::string_view s);

// Settings shared by every runner plus a name-specific `extra` object.
//
// extra keys (defaults in brackets):
//   correlation:      support_max [10], eps_max [0.5]
//   convergence:      support_max [10], eps_max [0.5],
//                     eps_spacing ["random" | "linear": eps_i = (i-1)/n],
//                     fractions [[0.01,0.05,0.1,0.2,0.5,1]], m_full [1000],
//                     m_star [1000]
//   policy_soundness: reference ["ground_truth" | "uniform"], m [5000],
//                     m_prime [5000], m_ref [5000], eps_bias [0.1],
//                     eps_upsilon [0], support_max [10], outlier_shift [15],
//                     eps_max_a [0.3], eps_max_b [0.95]. Vendor 1 draws
//                     eps from U(0, eps_max_b), every other vendor from
//                     U(0, eps_max_a); vendors 0 and 1 are compared.
//   incentive:        mode ["exact" | "empirical"], misreporter [1],
//                     noise_var [0.2], noise_units ["range": variance for
//                     features rescaled to [0, 1] | "absolute"],
//                     support_max [10], eps_max [0.5],
//                     m [500], m_star [1000] (empirical only)
//   game_verify:      n_values [[2,3,4,5]], max_distance [1.4142135623730951]
struct ExperimentConfig {
  ExperimentName name = ExperimentName::kCorrelation;
  std::size_t n = 5;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  KernelConfig kernel;
  nlohmann::json extra = nlohmann::json::object();
  bool timing = false;

  // Throws InputError for trials == 0, n out of range, or extra keys with
  // the wrong type or an invalid value.
  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

// Seed for trial `trial` of an experiment seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

ExperimentReport run_correlation(const ExperimentConfig& cfg);
ExperimentReport run_convergence(const ExperimentConfig& cfg);
ExperimentReport run_policy_soundness(const ExperimentConfig& cfg);
ExperimentReport run_incentive(const ExperimentConfig& cfg);
ExperimentReport run_game_verify(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Exact-mode misreport: p convolved with a zero-mean Gaussian of the given
// variance discretized on integer offsets |k| <= ceil(6 sigma), renormalized.
// One-dimensional integer-supported pmfs only.
DiscretePmf add_discrete_gaussian_noise(const DiscretePmf& p, double variance);

}  // namespace distval

#endif  // DISTVAL_EXPERIMENTS_HPP_
