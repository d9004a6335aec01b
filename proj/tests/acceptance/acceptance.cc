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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any selected criterion fails.
//
//   distval_acceptance            run every criterion
//   distval_acceptance --only N   run criterion N

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "distval/distval.hpp"

namespace {

using namespace distval;

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

ExperimentConfig correlation_config(std::size_t n) {
  ExperimentConfig c;
  c.name = ExperimentName::kCorrelation;
  c.n = n;
  c.trials = 10;
  c.seed = kSeed;
  c.kernel = KernelConfig::rbf(1.0);
  c.extra = {{"support_max", 10}, {"eps_max", 0.5}};
  return c;
}

Outcome criterion_correlation() {
  const std::vector<std::pair<std::size_t, double>> table{
      {5, 0.757}, {10, 0.851}, {20, 0.852}, {100, 0.869},
      {200, 0.810}, {500, 0.796}, {1000, 0.887}};
  Outcome out;
  for (const auto& [n, paper] : table) {
    const auto r = run_correlation(correlation_config(n));
    const auto& a = r.aggregate("correlation", "pearson");
    const bool ok = std::abs(a.mean - paper) <= 0.15 && a.mean >= 0.6;
    out.pass = out.pass && ok;
    out.detail += "n=" + std::to_string(n) + ":" + fmt(a.mean) + "(paper " +
                  fmt(paper) + (ok ? ") " : ",OUT) ");
  }
  return out;
}

Outcome criterion_regression() {
  Outcome out;
  for (std::size_t n : {100, 200, 500, 1000}) {
    const auto r = run_correlation(correlation_config(n));
    const auto& t = r.table("correlation");
    double worst = 1.0;
    for (const auto& row : t.rows) worst = std::min(worst, row[t.column("r2")]);
    const double mean = r.aggregate("correlation", "r2").mean;
    const bool ok = worst >= 0.9;
    out.pass = out.pass && ok;
    out.detail += "n=" + std::to_string(n) + ": mean r2 " + fmt(mean) +
                  ", min " + fmt(worst) + "; ";
  }
  return out;
}

Outcome criterion_huber_identity() {
  const auto cfg = KernelConfig::rbf(1.0);
  Rng rng(kSeed);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto pop = random_huber_population(1, 10, 0.99, rng.next());
    const auto& s = pop.specs[0];
    const double lhs = mmd_discrete(cfg, realized_pmf(s), pop.ground_truth);
    const double rhs =
        s.epsilon * mmd_discrete(cfg, pop.ground_truth, std::get<DiscretePmf>(s.outlier));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-9, "200 instances, max |d(P,P*) - eps d(P*,Q)| = " + fmt(worst)};
}

std::vector<double> dense(const DiscretePmf& p, std::size_t len) {
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[static_cast<std::size_t>(p.point(i)[0])] += p.prob(i);
  }
  return out;
}

MixtureWeights random_weights(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.uniform());
  for (auto& x : w) x /= total;
  return {w};
}

Outcome criterion_closure() {
  Rng rng(kSeed);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const auto pop = random_huber_population(n, 10, 0.9, rng.next());
    const auto w = random_weights(rng, n);
    std::vector<double> want(11, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto pi = dense(realized_pmf(pop.specs[i]), 11);
      for (std::size_t k = 0; k < 11; ++k) want[k] += w.weights[i] * pi[k];
    }
    const auto got = dense(realized_pmf(huber_mix(pop.specs, w)), 11);
    for (std::size_t k = 0; k < 11; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  }
  return {worst <= 1e-12, "200 instances, max pointwise error " + fmt(worst)};
}

Outcome criterion_prop2() {
  const auto cfg = KernelConfig::rbf(1.0);
  Rng rng(kSeed);
  double worst_excess = -1e300;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(9);
    const auto pop = random_huber_population(n, 10, 0.9, rng.next());
    const auto w = random_weights(rng, n);
    const double bound = approximation_error_bound(pop.specs, w, cfg);
    const auto ref = mixture_pmf(pop.specs, w);
    for (int probe = 0; probe < 20; ++probe) {
      const HuberSpec s{rng.uniform(0.0, 0.99), pop.ground_truth,
                        random_integer_pmf(10, rng.next())};
      const auto p = realized_pmf(s);
      const double err = std::abs(value_distribution_exact(cfg, p, pop.ground_truth) -
                                  value_distribution_exact(cfg, p, ref));
      worst_excess = std::max(worst_excess, err - bound);
    }
  }
  return {worst_excess <= 1e-9,
          "200 populations x 20 probes, max (error - bound) = " + fmt(worst_excess)};
}

Outcome criterion_lemma() {
  const auto cfg = KernelConfig::rbf(1.0);
  const double k = cfg.k_bound;
  Outcome out;
  for (std::size_t m : {100, 1000}) {
    const std::size_t trials = 500;
    std::vector<double> gaps(trials);
    parallel_for(trials, [&](std::size_t t) {
      const std::uint64_t s = derive_seed(kSeed + m, t);
      const auto p = random_integer_pmf(10, derive_seed(s, 0));
      const auto q = random_integer_pmf(10, derive_seed(s, 1));
      const auto d = sample_distribution(p, m, derive_seed(s, 2));
      const auto dp = sample_distribution(q, m, derive_seed(s, 3));
      gaps[t] = std::abs(mmd_biased(cfg, d, dp) - mmd_discrete(cfg, p, q));
    });
    for (double eps : {0.05, 0.1}) {
      const double slack = 2.0 * (std::sqrt(k / m) + std::sqrt(k / m)) + eps;
      std::size_t violations = 0;
      for (double g : gaps) violations += g > slack;
      const double rate = static_cast<double>(violations) / trials;
      const double bound =
          2.0 * std::exp(-eps * eps * m * m / (2.0 * k * (m + m)));
      const bool ok = rate <= bound + 0.03;
      out.pass = out.pass && ok;
      out.detail += "(m=" + std::to_string(m) + ",eps=" + fmt(eps) + ") rate " +
                    fmt(rate) + " vs bound " + fmt(bound) + "; ";
    }
  }
  return out;
}

Outcome criterion_policy() {
  Outcome out;
  for (const char* reference : {"ground_truth", "uniform"}) {
    ExperimentConfig c;
    c.name = ExperimentName::kPolicySoundness;
    c.n = std::string(reference) == "uniform" ? 10 : 2;
    c.trials = 500;
    c.seed = kSeed;
    c.extra = {{"reference", reference}};
    const auto r = run_policy_soundness(c);
    const auto& s = r.table("policy_summary");
    const auto& row = s.rows.at(0);
    const double concluded = row[s.column("concluded")];
    const double accuracy = row[s.column("accuracy")];
    const double required = row[s.column("guaranteed_accuracy")] - 0.03;
    const bool ok = concluded > 0 && accuracy >= required;
    out.pass = out.pass && ok;
    out.detail += std::string(reference) + ": " + fmt(concluded) +
                  " concluded, accuracy " + fmt(accuracy) + " >= " + fmt(required) +
                  "; ";
  }

  const auto cfg = KernelConfig::rbf(1.0);
  const auto base = DiscretePmf::point_mass({0.0});
  const auto shifted = DiscretePmf::point_mass({5.0});
  const std::size_t m = 10000;
  const auto d = sample_huber({0.0, base, shifted}, m, derive_seed(kSeed, 1), "clean");
  const auto dp = sample_huber({0.5, base, shifted}, m, derive_seed(kSeed, 2), "shifted");
  const auto ref = Reference::ground_truth(
      sample_distribution(base, m, derive_seed(kSeed, 3), "reference"), base);
  const auto rep = compare(cfg, {0.0, 0.1, 1.0}, d, dp, ref);
  const bool ok = rep.verdict == Verdict::kConclude;
  out.pass = out.pass && ok;
  out.detail += "separated pair: gap " + fmt(rep.observed_gap) + " vs margin " +
                fmt(rep.margin) + " -> " + std::string(to_string(rep.verdict));
  return out;
}

Outcome criterion_game() {
  ExperimentConfig c;
  c.name = ExperimentName::kGameVerify;
  c.trials = 100;
  c.seed = kSeed;
  const auto r = run_game_verify(c);
  const auto& t = r.table("game");
  std::size_t certified = 0;
  double worst = 0.0;
  for (const auto& row : t.rows) {
    certified += row[t.column("certified")] == 1.0;
    worst = std::max({worst, std::abs(row[t.column("z")] - row[t.column("expected")]),
                      std::abs(row[t.column("z_prime")] - row[t.column("expected")])});
  }
  return {certified == t.rows.size() && t.rows.size() == 400,
          std::to_string(certified) + "/" + std::to_string(t.rows.size()) +
              " games certified, max |z - (-mean d)| = " + fmt(worst)};
}

Outcome criterion_incentive() {
  Outcome out;
  for (std::size_t n : {5, 10}) {
    ExperimentConfig c;
    c.name = ExperimentName::kIncentiveCompat;
    c.n = n;
    c.trials = 5;
    c.seed = kSeed;
    const auto r = run_incentive(c);
    const auto& t = r.table("incentive");
    std::size_t checked = 0, failures = 0, compared = 0;
    for (const auto& row : t.rows) {
      if (row[t.column("misreporter")] != 1.0) continue;
      ++checked;
      if (!(row[t.column("gt_change")] < 0.0)) ++failures;
      if (!(row[t.column("ours_change")] < 0.0)) ++failures;
      const double ours = -row[t.column("ours_before")];
      const double sq = -row[t.column("mmd2_before")];
      if (ours > 0.0 && ours < 1.0 && sq > 0.0 && sq < 1.0) {
        ++compared;
        if (!(std::abs(row[t.column("ours_change")]) >
              std::abs(row[t.column("mmd2_change")]))) {
          ++failures;
        }
      }
    }
    out.pass = out.pass && failures == 0 && checked == 5;
    out.detail += "n=" + std::to_string(n) + ": " + std::to_string(checked) +
                  " misreports, " + std::to_string(compared) +
                  " MMD vs MMD2 comparisons, " + std::to_string(failures) +
                  " failures; ";
  }
  return out;
}

std::string csv_bytes(const ExperimentReport& r) {
  std::ostringstream os;
  for (const auto& t : r.tables) write_csv(t, os);
  return os.str();
}

Outcome criterion_determinism() {
  Outcome out;
  for (auto name : {ExperimentName::kCorrelation, ExperimentName::kConvergence,
                    ExperimentName::kPolicySoundness, ExperimentName::kIncentiveCompat,
                    ExperimentName::kGameVerify}) {
    ExperimentConfig c;
    c.name = name;
    c.n = 5;
    c.trials = 6;
    c.seed = kSeed;
    if (name == ExperimentName::kConvergence) c.extra = {{"m_full", 300}, {"m_star", 300}};
    if (name == ExperimentName::kPolicySoundness) {
      c.extra = {{"m", 150}, {"m_prime", 150}, {"m_ref", 150}};
    }
    set_num_threads(1);
    const std::string a = csv_bytes(run_experiment(c));
    const std::string b = csv_bytes(run_experiment(c));
    set_num_threads(4);
    const std::string p = csv_bytes(run_experiment(c));
    set_num_threads(0);
    const bool ok = a == b && a == p && !a.empty();
    out.pass = out.pass && ok;
    out.detail += std::string(to_string(name)) + (ok ? " identical; " : " DIFFERS; ");
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "correlation reproduction", criterion_correlation},
      {2, "regression fit", criterion_regression},
      {3, "Huber value identity", criterion_huber_identity},
      {4, "mixture closure", criterion_closure},
      {5, "mixture approximation bound", criterion_prop2},
      {6, "estimator concentration", criterion_lemma},
      {7, "policy soundness", criterion_policy},
      {8, "minimax certificate", criterion_game},
      {9, "incentive compatibility", criterion_incentive},
      {10, "determinism", criterion_determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s [%.1fs]: %s\n", c.id, o.pass ? "PASS" : "FAIL",
                c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
