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

#include "distval/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "distval/error.hpp"
#include "distval/game.hpp"
#include "distval/huber.hpp"
#include "distval/metrics.hpp"
#include "distval/mmd.hpp"
#include "distval/parallel.hpp"
#include "distval/policy.hpp"
#include "distval/rng.hpp"
#include "distval/valuation.hpp"

namespace distval {
namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Reads extra keys with defaults, rejecting unknown keys and bad types.
class ExtraReader {
 public:
  ExtraReader(const json& extra, std::string experiment)
      : extra_(extra), experiment_(std::move(experiment)) {
    if (!extra_.is_object()) {
      throw InputError(experiment_ + ": 'extra' must be an object");
    }
  }

  double number(const std::string& key, double def) {
    known_.insert(key);
    if (!extra_.contains(key)) return resolved(key, def);
    const auto& v = extra_.at(key);
    if (!v.is_number()) fail(key, "a number");
    return resolved(key, v.get<double>());
  }

  std::size_t count(const std::string& key, std::size_t def) {
    known_.insert(key);
    if (!extra_.contains(key)) return resolved(key, def);
    const auto& v = extra_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(key, "a nonnegative integer");
    }
    return resolved(key, v.get<std::size_t>());
  }

  std::string text(const std::string& key, const std::string& def,
                   const std::vector<std::string>& allowed) {
    known_.insert(key);
    std::string value = def;
    if (extra_.contains(key)) {
      if (!extra_.at(key).is_string()) fail(key, "a string");
      value = extra_.at(key).get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
      fail(key, "one of the documented choices");
    }
    return resolved(key, value);
  }

  std::vector<double> numbers(const std::string& key,
                              const std::vector<double>& def) {
    known_.insert(key);
    if (!extra_.contains(key)) return resolved(key, def);
    const auto& v = extra_.at(key);
    if (!v.is_array() || v.empty()) fail(key, "a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "a nonempty array of numbers");
      out.push_back(e.get<double>());
    }
    return resolved(key, out);
  }

  // Throws for keys that no accessor asked about.
  json finish() const {
    for (const auto& [key, value] : extra_.items()) {
      if (!known_.count(key)) {
        throw InputError(experiment_ + ": unknown extra key '" + key + "'");
      }
    }
    return resolved_;
  }

 private:
  template <class T>
  T resolved(const std::string& key, T value) {
    resolved_[key] = value;
    return value;
  }

  [[noreturn]] void fail(const std::string& key, const char* want) const {
    throw InputError(experiment_ + ": extra key '" + key + "' must be " + want);
  }

  const json& extra_;
  std::string experiment_;
  std::set<std::string> known_;
  json resolved_ = json::object();
};

struct CorrelationParams {
  std::size_t support_max;
  double eps_max;
};

CorrelationParams read_correlation(ExtraReader& r) {
  CorrelationParams p{r.count("support_max", 10), r.number("eps_max", 0.5)};
  if (p.support_max < 1) throw InputError("support_max must be >= 1");
  if (!(p.eps_max >= 0.0 && p.eps_max < 1.0)) {
    throw InputError("eps_max must lie in [0, 1)");
  }
  return p;
}

struct ConvergenceParams {
  CorrelationParams population;
  bool linear_eps;
  std::vector<double> fractions;
  std::size_t m_full;
  std::size_t m_star;
};

ConvergenceParams read_convergence(ExtraReader& r) {
  ConvergenceParams p;
  p.population = read_correlation(r);
  p.linear_eps =
      r.text("eps_spacing", "random", {"random", "linear"}) == "linear";
  p.fractions = r.numbers("fractions", {0.01, 0.05, 0.1, 0.2, 0.5, 1.0});
  p.m_full = r.count("m_full", 1000);
  p.m_star = r.count("m_star", 1000);
  for (double f : p.fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw InputError("fractions must lie in (0, 1]");
  }
  if (p.m_full < 1 || p.m_star < 1) {
    throw InputError("m_full and m_star must be >= 1");
  }
  return p;
}

struct PolicySoundnessParams {
  bool uniform_reference;
  std::size_t m;
  std::size_t m_prime;
  std::size_t m_ref;
  PolicyParams policy;
  std::size_t support_max;
  std::size_t outlier_shift;
  double eps_max_a;
  double eps_max_b;
};

PolicySoundnessParams read_policy(ExtraReader& r) {
  PolicySoundnessParams p;
  p.uniform_reference =
      r.text("reference", "ground_truth", {"ground_truth", "uniform"}) ==
      "uniform";
  p.m = r.count("m", 5000);
  p.m_prime = r.count("m_prime", 5000);
  p.m_ref = r.count("m_ref", 5000);
  p.policy.eps_bias = r.number("eps_bias", 0.1);
  p.policy.eps_upsilon = r.number("eps_upsilon", 0.0);
  p.support_max = r.count("support_max", 10);
  p.outlier_shift = r.count("outlier_shift", 15);
  p.eps_max_a = r.number("eps_max_a", 0.3);
  p.eps_max_b = r.number("eps_max_b", 0.95);
  p.policy.validate();
  if (p.m < 1 || p.m_prime < 1 || p.m_ref < 1) {
    throw InputError("sample sizes must be >= 1");
  }
  for (double e : {p.eps_max_a, p.eps_max_b}) {
    if (!(e >= 0.0 && e < 1.0)) throw InputError("eps_max_* must lie in [0, 1)");
  }
  return p;
}

struct IncentiveParams {
  bool empirical;
  std::size_t misreporter;
  double noise_var;
  double effective_var;
  CorrelationParams population;
  std::size_t m;
  std::size_t m_star;
};

IncentiveParams read_incentive(ExtraReader& r) {
  IncentiveParams p;
  p.empirical = r.text("mode", "exact", {"exact", "empirical"}) == "empirical";
  p.misreporter = r.count("misreporter", 1);
  p.noise_var = r.number("noise_var", 0.2);
  const bool relative =
      r.text("noise_units", "range", {"range", "absolute"}) == "range";
  p.population = read_correlation(r);
  // "range": the variance is stated for features rescaled to [0, 1].
  if (relative) {
    const auto span = static_cast<double>(p.population.support_max);
    p.effective_var = p.noise_var * span * span;
  } else {
    p.effective_var = p.noise_var;
  }
  p.m = r.count("m", 500);
  p.m_star = r.count("m_star", 1000);
  if (!(p.noise_var > 0.0)) throw InputError("noise_var must be > 0");
  if (p.m < 2 || p.m_star < 2) throw InputError("m and m_star must be >= 2");
  return p;
}

struct GameParams {
  std::vector<double> n_values;
  double max_distance;
};

GameParams read_game(ExtraReader& r) {
  GameParams p{r.numbers("n_values", {2, 3, 4, 5}),
               r.number("max_distance", std::numbers::sqrt2)};
  for (double n : p.n_values) {
    if (n != std::floor(n) || n < 2 ||
        n > static_cast<double>(GameInstance::kMaxPlayers)) {
      throw InputError("n_values must be integers in [2, 7]");
    }
  }
  if (!(p.max_distance > 0.0)) throw InputError("max_distance must be > 0");
  return p;
}

json resolve_extra(const ExperimentConfig& cfg) {
  ExtraReader r(cfg.extra, std::string(to_string(cfg.name)));
  switch (cfg.name) {
    case ExperimentName::kCorrelation:
      read_correlation(r);
      break;
    case ExperimentName::kConvergence:
      read_convergence(r);
      break;
    case ExperimentName::kPolicySoundness:
      read_policy(r);
      break;
    case ExperimentName::kIncentiveCompat: {
      const auto p = read_incentive(r);
      if (p.misreporter >= cfg.n) {
        throw InputError("misreporter index must be < n");
      }
      break;
    }
    case ExperimentName::kGameVerify:
      read_game(r);
      break;
  }
  return r.finish();
}

using TrialRows = std::vector<std::vector<std::vector<double>>>;

// Runs fn(trial, seed) for every trial (possibly in parallel) and appends
// each trial's rows to the matching table in trial order.
void run_trials(std::size_t trials, std::uint64_t seed,
                std::vector<ReportTable>& tables,
                const std::function<TrialRows(std::size_t, std::uint64_t)>& fn) {
  std::vector<TrialRows> results(trials);
  parallel_for(trials, [&](std::size_t t) {
    results[t] = fn(t, trial_seed(seed, t));
  });
  for (auto& res : results) {
    for (std::size_t k = 0; k < tables.size(); ++k) {
      for (auto& row : res[k]) tables[k].rows.push_back(std::move(row));
    }
  }
}

ExperimentReport start_report(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = std::string(to_string(cfg.name));
  report.config = cfg.to_json();
  report.config["extra"] = resolve_extra(cfg);
  report.seed = cfg.seed;
  return report;
}

std::vector<DiscretePmf> realized(const std::vector<HuberSpec>& specs) {
  std::vector<DiscretePmf> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(realized_pmf(s));
  return out;
}

DiscretePmf uniform_mixture(const std::vector<DiscretePmf>& pmfs) {
  std::vector<std::pair<double, const DiscretePmf*>> parts;
  const double w = 1.0 / static_cast<double>(pmfs.size());
  for (const auto& p : pmfs) parts.emplace_back(w, &p);
  return DiscretePmf::mixture(parts);
}

}  // namespace

std::string_view to_string(ExperimentName name) {
  switch (name) {
    case ExperimentName::kCorrelation:
      return "correlation";
    case ExperimentName::kConvergence:
      return "convergence";
    case ExperimentName::kPolicySoundness:
      return "policy_soundness";
    case ExperimentName::kIncentiveCompat:
      return "incentive";
    case ExperimentName::kGameVerify:
      return "game_verify";
  }
  return "unknown";
}

ExperimentName parse_experiment_name(std::string_view s) {
  if (s == "correlation") return ExperimentName::kCorrelation;
  if (s == "convergence") return ExperimentName::kConvergence;
  if (s == "policy_soundness" || s == "policy") {
    return ExperimentName::kPolicySoundness;
  }
  if (s == "incentive" || s == "incentive_compat" || s == "ic") {
    return ExperimentName::kIncentiveCompat;
  }
  if (s == "game_verify" || s == "game") return ExperimentName::kGameVerify;
  throw InputError("unknown experiment '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw InputError("trials must be >= 1");
  if (n == 0) throw InputError("n must be >= 1");
  if ((name == ExperimentName::kCorrelation ||
       name == ExperimentName::kConvergence ||
       name == ExperimentName::kIncentiveCompat) &&
      n < 2) {
    throw InputError(std::string(to_string(name)) + " needs n >= 2 vendors");
  }
  if (name == ExperimentName::kPolicySoundness && n < 2) {
    throw InputError("policy_soundness needs n >= 2 vendors");
  }
  kernel.validate();
  resolve_extra(*this);
}

json ExperimentConfig::to_json() const {
  return {{"name", std::string(to_string(name))},
          {"n", n},
          {"trials", trials},
          {"seed", seed},
          {"kernel",
           {{"family", "rbf"}, {"sigma", kernel.sigma}, {"k_bound", kernel.k_bound}}},
          {"extra", extra},
          {"timing", timing}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw InputError("experiment config must be an object");
  ExperimentConfig cfg;
  try {
    cfg.name = parse_experiment_name(j.at("name").get<std::string>());
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("kernel")) {
      const auto& k = j.at("kernel");
      if (k.contains("family") && k.at("family").get<std::string>() != "rbf") {
        throw InputError("only the 'rbf' kernel family is supported");
      }
      if (k.contains("sigma")) cfg.kernel.sigma = k.at("sigma").get<double>();
      if (k.contains("k_bound")) {
        cfg.kernel.k_bound = k.at("k_bound").get<double>();
      }
    }
    if (j.contains("extra")) cfg.extra = j.at("extra");
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
  } catch (const json::exception& e) {
    throw InputError(std::string("experiment config: ") + e.what());
  }
  return cfg;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return derive_seed(seed, trial);
}

ExperimentReport run_correlation(const ExperimentConfig& cfg) {
  cfg.validate();
  ExtraReader reader(cfg.extra, "correlation");
  const auto params = read_correlation(reader);
  ExperimentReport report = start_report(cfg);

  std::vector<ReportTable> tables{
      {"correlation", {"trial", "n", "pearson", "r2", "slope", "skipped"}, {}},
      {"scatter", {"trial", "vendor", "error", "true_value", "measured_value"}, {}},
  };
  run_trials(cfg.trials, cfg.seed, tables, [&](std::size_t t, std::uint64_t s) {
    const auto pop = random_huber_population(cfg.n, params.support_max,
                                             params.eps_max, s);
    const auto pmfs = realized(pop.specs);
    const DiscretePmf reference = uniform_mixture(pmfs);
    std::vector<double> error(cfg.n), truth(cfg.n), measured(cfg.n);
    TrialRows rows(2);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      error[i] = mmd_discrete(cfg.kernel, pmfs[i], pop.ground_truth);
      truth[i] = -error[i];
      measured[i] = value_distribution_exact(cfg.kernel, pmfs[i], reference);
      rows[1].push_back({static_cast<double>(t), static_cast<double>(i),
                         error[i], truth[i], measured[i]});
    }
    double rho = kNaN;
    double r2 = kNaN;
    double slope = kNaN;
    double skipped = 0.0;
    try {
      rho = pearson(ValueVector::indexed(truth), ValueVector::indexed(measured));
      const LinearFit fit = linear_regression(error, measured);
      r2 = fit.r2;
      slope = fit.slope;
    } catch (const InputError&) {
      skipped = 1.0;
    }
    rows[0].push_back({static_cast<double>(t), static_cast<double>(cfg.n), rho,
                       r2, slope, skipped});
    return rows;
  });

  for (const auto& row : tables[0].rows) {
    if (row[5] != 0.0) {
      report.flags.push_back("trial " + format_number(row[0]) +
                             ": correlation undefined (constant values), skipped");
    } else if (row[3] < 0.9) {
      report.flags.push_back("trial " + format_number(row[0]) + ": r2 = " +
                             format_number(row[3]) + " < 0.9");
    }
  }
  report.aggregates = aggregate_table(tables[0], {"pearson", "r2", "skipped"});
  report.tables = std::move(tables);
  return report;
}

ExperimentReport run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  ExtraReader reader(cfg.extra, "convergence");
  const auto params = read_convergence(reader);
  ExperimentReport report = start_report(cfg);

  std::vector<ReportTable> tables{
      {"convergence",
       {"trial", "fraction", "size", "l2", "linf", "inversions"},
       {}},
  };
  run_trials(cfg.trials, cfg.seed, tables, [&](std::size_t t, std::uint64_t s) {
    auto pop = random_huber_population(cfg.n, params.population.support_max,
                                       params.population.eps_max,
                                       derive_seed(s, 0));
    if (params.linear_eps) {
      for (std::size_t i = 0; i < cfg.n; ++i) {
        pop.specs[i].epsilon =
            static_cast<double>(i) / static_cast<double>(cfg.n);
      }
    }
    const Dataset reference = sample_distribution(
        pop.ground_truth, params.m_star, derive_seed(s, 1), "reference");
    const double ref_self = gram_sum_self(cfg.kernel, reference);
    std::vector<Dataset> full;
    full.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      full.push_back(sample_huber(pop.specs[i], params.m_full,
                                  derive_seed(s, 2 + i),
                                  "vendor" + std::to_string(i)));
    }
    ValueVector nu_star = ValueVector::indexed(std::vector<double>(cfg.n));
    for (std::size_t i = 0; i < cfg.n; ++i) {
      nu_star.values[i] =
          0.0 - mmd_biased_with_self_sum(cfg.kernel, full[i], reference, ref_self);
    }
    TrialRows rows(1);
    for (double f : params.fractions) {
      const auto size = static_cast<std::size_t>(std::clamp<long long>(
          std::llround(f * static_cast<double>(params.m_full)), 1,
          static_cast<long long>(params.m_full)));
      ValueVector nu = ValueVector::indexed(std::vector<double>(cfg.n));
      for (std::size_t i = 0; i < cfg.n; ++i) {
        nu.values[i] = size == params.m_full
                           ? nu_star.values[i]
                           : -mmd_biased_with_self_sum(cfg.kernel,
                                                       full[i].prefix(size),
                                                       reference, ref_self);
      }
      rows[0].push_back({static_cast<double>(t), f, static_cast<double>(size),
                         l2_err(nu, nu_star), l_inf_err(nu, nu_star),
                         static_cast<double>(inversions(nu, nu_star))});
    }
    return rows;
  });

  report.aggregates =
      aggregate_table(tables[0], {"l2", "linf", "inversions"}, "fraction");
  report.tables = std::move(tables);
  return report;
}

namespace {

DiscretePmf shifted_integer_pmf(std::size_t support_max, std::size_t shift,
                                Rng& rng) {
  std::vector<double> support(support_max + 1);
  std::vector<double> probs(support_max + 1);
  double total = 0.0;
  for (std::size_t k = 0; k <= support_max; ++k) {
    support[k] = static_cast<double>(shift + k);
    probs[k] = rng.uniform();
    total += probs[k];
  }
  for (auto& p : probs) p /= total;
  return {1, std::move(support), std::move(probs)};
}

}  // namespace

ExperimentReport run_policy_soundness(const ExperimentConfig& cfg) {
  cfg.validate();
  ExtraReader reader(cfg.extra, "policy_soundness");
  const auto params = read_policy(reader);
  ExperimentReport report = start_report(cfg);

  std::vector<ReportTable> tables{
      {"policy",
       {"trial", "eps_a", "eps_b", "upsilon_a", "upsilon_b", "value_a",
        "value_b", "observed_gap", "margin", "huber_gap", "delta",
        "confidence", "concluded", "truth_holds"},
       {}},
  };
  run_trials(cfg.trials, cfg.seed, tables, [&](std::size_t t, std::uint64_t s) {
    Rng rng(derive_seed(s, 0));
    const DiscretePmf truth = shifted_integer_pmf(params.support_max, 0, rng);
    std::vector<HuberSpec> specs;
    for (std::size_t v = 0; v < cfg.n; ++v) {
      const std::size_t shift = rng.bernoulli(0.5) ? params.outlier_shift : 0;
      DiscretePmf outlier = shifted_integer_pmf(params.support_max, shift, rng);
      const double eps =
          rng.uniform(0.0, v == 1 ? params.eps_max_b : params.eps_max_a);
      specs.push_back(HuberSpec{eps, truth, std::move(outlier)});
    }
    const Dataset da = sample_huber(specs[0], params.m, derive_seed(s, 1), "a");
    const Dataset db =
        sample_huber(specs[1], params.m_prime, derive_seed(s, 2), "b");

    CompareOptions opts;
    Reference ref = [&] {
      if (!params.uniform_reference) {
        return Reference::ground_truth(
            sample_distribution(truth, params.m_ref, derive_seed(s, 3), "ref"),
            truth);
      }
      // Independent draws from every vendor, combined as D_U.
      std::vector<Dataset> fresh;
      for (std::size_t v = 0; v < cfg.n; ++v) {
        fresh.push_back(sample_huber(specs[v], params.m_ref,
                                     derive_seed(s, 10 + v),
                                     "v" + std::to_string(v)));
      }
      return build_uniform_reference(fresh, derive_seed(s, 4));
    }();
    if (params.uniform_reference) {
      opts.huber_gap = approximation_error_bound(
          specs, MixtureWeights::uniform(cfg.n), cfg.kernel);
    }
    const DecisionReport rep =
        compare(cfg.kernel, params.policy, da, db, ref, opts);
    const double ua = huber_value_exact(cfg.kernel, specs[0]);
    const double ub = huber_value_exact(cfg.kernel, specs[1]);
    TrialRows rows(1);
    rows[0].push_back(
        {static_cast<double>(t), specs[0].epsilon, specs[1].epsilon, ua, ub,
         rep.value, rep.value_prime, rep.observed_gap, rep.margin,
         opts.huber_gap.value_or(0.0), rep.delta, rep.confidence,
         rep.verdict == Verdict::kConclude ? 1.0 : 0.0,
         ua > ub + params.policy.eps_upsilon ? 1.0 : 0.0});
    return rows;
  });

  // Accuracy among concluded trials against the guaranteed level.
  const auto& pt = tables[0];
  const std::size_t ci = pt.column("concluded");
  const std::size_t hi = pt.column("truth_holds");
  const std::size_t di = pt.column("delta");
  double concluded = 0.0;
  double correct = 0.0;
  double max_delta = 0.0;
  for (const auto& row : pt.rows) {
    max_delta = std::max(max_delta, row[di]);
    if (row[ci] != 0.0) {
      concluded += 1.0;
      correct += row[hi];
    }
  }
  const double accuracy = concluded > 0.0 ? correct / concluded : kNaN;
  const double required = std::max(0.0, 1.0 - 2.0 * max_delta);
  ReportTable summary{"policy_summary",
                      {"trials", "concluded", "correct", "accuracy",
                       "violation_rate", "max_delta", "guaranteed_accuracy"},
                      {}};
  summary.rows.push_back({static_cast<double>(cfg.trials), concluded, correct,
                          accuracy,
                          concluded > 0.0 ? 1.0 - accuracy : kNaN, max_delta,
                          required});
  if (concluded == 0.0) {
    report.flags.push_back("no trial concluded; soundness is vacuous");
  }
  report.aggregates = aggregate_table(
      pt, {"concluded", "truth_holds", "observed_gap", "margin", "confidence"});
  report.tables = std::move(tables);
  report.tables.push_back(std::move(summary));
  return report;
}

DiscretePmf add_discrete_gaussian_noise(const DiscretePmf& p, double variance) {
  if (p.dim() != 1) {
    throw InputError("discrete Gaussian noise needs a one-dimensional pmf");
  }
  if (!(variance > 0.0)) throw InputError("noise variance must be > 0");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.point(i)[0] != std::round(p.point(i)[0])) {
      throw InputError("discrete Gaussian noise needs integer support");
    }
  }
  const auto width =
      static_cast<long long>(std::ceil(6.0 * std::sqrt(variance)));
  std::vector<double> kernel;
  double norm = 0.0;
  for (long long k = -width; k <= width; ++k) {
    const double w =
        std::exp(-static_cast<double>(k * k) / (2.0 * variance));
    kernel.push_back(w);
    norm += w;
  }
  for (auto& w : kernel) w /= norm;

  long long lo = 0;
  long long hi = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = static_cast<long long>(p.point(i)[0]);
    lo = i == 0 ? x : std::min(lo, x);
    hi = i == 0 ? x : std::max(hi, x);
  }
  lo -= width;
  hi += width;
  std::vector<double> probs(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = static_cast<long long>(p.point(i)[0]);
    for (long long k = -width; k <= width; ++k) {
      probs[static_cast<std::size_t>(x + k - lo)] +=
          p.prob(i) * kernel[static_cast<std::size_t>(k + width)];
    }
  }
  double total = 0.0;
  for (double v : probs) total += v;
  std::vector<double> support;
  std::vector<double> kept;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    support.push_back(static_cast<double>(lo + static_cast<long long>(j)));
    kept.push_back(probs[j] / total);
  }
  return {1, std::move(support), std::move(kept)};
}

ExperimentReport run_incentive(const ExperimentConfig& cfg) {
  cfg.validate();
  ExtraReader reader(cfg.extra, "incentive");
  const auto params = read_incentive(reader);
  ExperimentReport report = start_report(cfg);

  std::vector<ReportTable> tables{
      {"incentive",
       {"trial", "vendor", "misreporter", "gt_before", "gt_after", "gt_change",
        "ours_before", "ours_after", "ours_change", "mmd2_before", "mmd2_after",
        "mmd2_change"},
       {}},
  };
  const std::size_t ip = params.misreporter;
  run_trials(cfg.trials, cfg.seed, tables, [&](std::size_t t, std::uint64_t s) {
    const auto pop = random_huber_population(
        cfg.n, params.population.support_max, params.population.eps_max,
        derive_seed(s, 0));
    std::vector<double> gt_b(cfg.n), gt_a(cfg.n), ours_b(cfg.n), ours_a(cfg.n),
        sq_b(cfg.n), sq_a(cfg.n);

    if (!params.empirical) {
      const auto honest = realized(pop.specs);
      auto reported = honest;
      reported[ip] = add_discrete_gaussian_noise(honest[ip], params.effective_var);
      const DiscretePmf pu_b = uniform_mixture(honest);
      const DiscretePmf pu_a = uniform_mixture(reported);
      for (std::size_t i = 0; i < cfg.n; ++i) {
        gt_b[i] = 0.0 - mmd_discrete(cfg.kernel, honest[i], pop.ground_truth);
        gt_a[i] = 0.0 - mmd_discrete(cfg.kernel, reported[i], pop.ground_truth);
        const double db = mmd_discrete(cfg.kernel, honest[i], pu_b);
        const double da = mmd_discrete(cfg.kernel, reported[i], pu_a);
        ours_b[i] = -db;
        ours_a[i] = -da;
        sq_b[i] = -db * db;
        sq_a[i] = -da * da;
      }
    } else {
      const Dataset reference = sample_distribution(
          pop.ground_truth, params.m_star, derive_seed(s, 1), "reference");
      std::vector<Dataset> honest;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        honest.push_back(sample_huber(pop.specs[i], params.m,
                                      derive_seed(s, 2 + i),
                                      "vendor" + std::to_string(i)));
      }
      auto reported = honest;
      {
        Rng noise(derive_seed(s, 2 + cfg.n));
        std::vector<double> flat(honest[ip].flat().begin(),
                                 honest[ip].flat().end());
        const double sd = std::sqrt(params.effective_var);
        for (auto& v : flat) v += sd * noise.normal();
        reported[ip] = Dataset(honest[ip].id(), honest[ip].dim(), flat);
      }
      const std::uint64_t ref_seed = derive_seed(s, 3 + cfg.n);
      const Reference du_b = build_uniform_reference(honest, ref_seed);
      const Reference du_a = build_uniform_reference(reported, ref_seed);
      const Reference gt = Reference::ground_truth(reference);
      for (std::size_t i = 0; i < cfg.n; ++i) {
        gt_b[i] = value_dataset(cfg.kernel, honest[i], gt);
        gt_a[i] = value_dataset(cfg.kernel, reported[i], gt);
        ours_b[i] = value_dataset(cfg.kernel, honest[i], du_b);
        ours_a[i] = value_dataset(cfg.kernel, reported[i], du_a);
        sq_b[i] = 0.0 - mmd2_unbiased(cfg.kernel, honest[i], du_b.data);
        sq_a[i] = 0.0 - mmd2_unbiased(cfg.kernel, reported[i], du_a.data);
      }
    }

    TrialRows rows(1);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      rows[0].push_back({static_cast<double>(t), static_cast<double>(i),
                         i == ip ? 1.0 : 0.0, gt_b[i], gt_a[i],
                         gt_a[i] - gt_b[i], ours_b[i], ours_a[i],
                         ours_a[i] - ours_b[i], sq_b[i], sq_a[i],
                         sq_a[i] - sq_b[i]});
    }
    return rows;
  });

  report.aggregates = aggregate_table(
      tables[0], {"gt_change", "ours_change", "mmd2_change"}, "vendor");
  report.tables = std::move(tables);
  return report;
}

ExperimentReport run_game_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  ExtraReader reader(cfg.extra, "game_verify");
  const auto params = read_game(reader);
  ExperimentReport report = start_report(cfg);

  ReportTable table{"game",
                    {"n", "game", "z", "z_prime", "expected", "column_spread",
                     "best_pure", "best_grid", "certified"},
                    {}};
  const std::size_t per_n = cfg.trials;
  const std::size_t total = params.n_values.size() * per_n;
  std::vector<std::vector<double>> rows(total);
  std::vector<std::vector<std::string>> violations(total);
  parallel_for(total, [&](std::size_t k) {
    const auto n = static_cast<std::size_t>(params.n_values[k / per_n]);
    Rng rng(trial_seed(cfg.seed, k));
    std::vector<double> d(n);
    for (auto& x : d) x = rng.uniform(0.0, params.max_distance);
    const GameVerification v = verify_minmax(build_game(d));
    rows[k] = {static_cast<double>(n), static_cast<double>(k % per_n), v.z,
               v.z_prime, v.expected, v.column_spread, v.best_pure_value,
               v.best_grid_value, v.certified ? 1.0 : 0.0};
    violations[k] = v.violations;
  });
  table.rows = std::move(rows);
  for (std::size_t k = 0; k < total; ++k) {
    for (const auto& msg : violations[k]) {
      report.flags.push_back("game " + std::to_string(k) + ": " + msg);
    }
  }
  report.aggregates = aggregate_table(table, {"certified"}, "n");
  report.tables.push_back(std::move(table));
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  switch (cfg.name) {
    case ExperimentName::kCorrelation:
      report = run_correlation(cfg);
      break;
    case ExperimentName::kConvergence:
      report = run_convergence(cfg);
      break;
    case ExperimentName::kPolicySoundness:
      report = run_policy_soundness(cfg);
      break;
    case ExperimentName::kIncentiveCompat:
      report = run_incentive(cfg);
      break;
    case ExperimentName::kGameVerify:
      report = run_game_verify(cfg);
      break;
  }
  if (cfg.timing) {
    report.elapsed_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
  }
  return report;
}

}  // namespace distval
