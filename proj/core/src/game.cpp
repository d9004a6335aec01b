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

#include "distval/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "distval/error.hpp"
#include "distval/rng.hpp"

namespace distval {
namespace {

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  double acc = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return static_cast<std::size_t>(std::llround(acc));
}

double negative_mean(const std::vector<double>& d) {
  return -std::accumulate(d.begin(), d.end(), 0.0) /
         static_cast<double>(d.size());
}

std::string describe(const char* what, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

// Calls fn(weights) for every point of the simplex grid {k / res}.
template <class Fn>
void for_each_grid_point(std::size_t n, std::size_t res, Fn&& fn) {
  std::vector<std::size_t> parts(n, 0);
  std::vector<double> x(n);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == n) {
      parts[i] = left;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] = static_cast<double>(parts[k]) / static_cast<double>(res);
      }
      fn(x);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      parts[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, res);
}

}  // namespace

GameInstance::GameInstance(std::vector<double> distances)
    : distances_(std::move(distances)) {
  const std::size_t n = distances_.size();
  if (n < 2 || n > kMaxPlayers) {
    throw CapacityError("game needs 2 <= n <= " + std::to_string(kMaxPlayers) +
                        " players for explicit enumeration, got " +
                        std::to_string(n));
  }
  for (double d : distances_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InputError("game distances must be finite and nonnegative");
    }
  }
  columns_ = factorial(n);
  perms_.reserve(columns_ * n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms_.insert(perms_.end(), perm.begin(), perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));

  payoff_.resize(n * columns_);
  for (std::size_t c = 0; c < columns_; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      payoff_[r * columns_ + c] = -distances_[perms_[c * n + r]];
    }
  }
}

GameInstance build_game(const std::vector<double>& distances) {
  return GameInstance(distances);
}

namespace {

// Row-averaged payoff of every column, and its spread.
std::vector<double> uniform_row_payoffs(const GameInstance& g) {
  std::vector<double> out(g.columns());
  const double inv_n = 1.0 / static_cast<double>(g.n());
  for (std::size_t c = 0; c < g.columns(); ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < g.n(); ++r) acc += g.payoff(r, c);
    out[c] = acc * inv_n;
  }
  return out;
}

}  // namespace

double uniform_strategy_value(const GameInstance& g) {
  const auto per_column = uniform_row_payoffs(g);
  const auto [lo, hi] = std::minmax_element(per_column.begin(), per_column.end());
  if (*hi - *lo > kGameTolerance) {
    throw PropertyViolation("uniform row payoff depends on the column: spread " +
                            std::to_string(*hi - *lo));
  }
  return *lo;
}

GameVerification verify_minmax(const GameInstance& g,
                               std::size_t grid_resolution) {
  GameVerification v;
  v.n = g.n();
  v.distances = g.distances();
  v.expected = negative_mean(g.distances());

  // (a) primal value of the uniform row strategy.
  const auto per_column = uniform_row_payoffs(g);
  const auto [lo, hi] = std::minmax_element(per_column.begin(), per_column.end());
  v.z = *lo;
  v.column_spread = *hi - *lo;
  if (v.column_spread > kGameTolerance) {
    v.violations.push_back(describe("uniform row payoff column spread",
                                    v.column_spread, 0.0));
  }

  // (b) dual value of the uniform column strategy: the best row response.
  const double inv_cols = 1.0 / static_cast<double>(g.columns());
  double z_prime = -INFINITY;
  for (std::size_t r = 0; r < g.n(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < g.columns(); ++c) acc += g.payoff(r, c);
    z_prime = std::max(z_prime, acc * inv_cols);
  }
  v.z_prime = z_prime;

  // (c) matching primal and dual values certify optimality.
  if (std::abs(v.z - v.z_prime) > kGameTolerance) {
    v.violations.push_back(describe("duality gap z - z'", v.z - v.z_prime, 0.0));
  }
  if (std::abs(v.z - v.expected) > kGameTolerance) {
    v.violations.push_back(describe("uniform value", v.z, v.expected));
  }

  // (d) no pure or gridded mixed row strategy does better than z.
  auto guaranteed = [&](const std::vector<double>& x) {
    double worst = INFINITY;
    for (std::size_t c = 0; c < g.columns(); ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < g.n(); ++r) acc += x[r] * g.payoff(r, c);
      worst = std::min(worst, acc);
    }
    return worst;
  };
  v.best_pure_value = -INFINITY;
  std::vector<double> unit(g.n(), 0.0);
  for (std::size_t r = 0; r < g.n(); ++r) {
    unit.assign(g.n(), 0.0);
    unit[r] = 1.0;
    v.best_pure_value = std::max(v.best_pure_value, guaranteed(unit));
  }
  if (v.best_pure_value > v.z + kGameTolerance) {
    v.violations.push_back(
        describe("pure row strategy beats uniform", v.best_pure_value, v.z));
  }

  std::size_t res = grid_resolution;
  if (res == 0) {
    res = 1;
    while (res < 12 && binomial(res + 1 + g.n() - 1, g.n() - 1) <= 2000) ++res;
  }
  v.best_grid_value = -INFINITY;
  for_each_grid_point(g.n(), res, [&](const std::vector<double>& x) {
    ++v.grid_points;
    v.best_grid_value = std::max(v.best_grid_value, guaranteed(x));
  });
  if (v.best_grid_value > v.z + kGameTolerance) {
    v.violations.push_back(
        describe("grid row strategy beats uniform", v.best_grid_value, v.z));
  }

  v.certified = v.violations.empty();
  return v;
}

GameVerification verify_minmax_sampled(const std::vector<double>& distances,
                                       std::size_t samples,
                                       std::uint64_t seed) {
  if (distances.size() < 2) {
    throw InputError("game needs at least two players");
  }
  for (double d : distances) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InputError("game distances must be finite and nonnegative");
    }
  }
  GameVerification v;
  v.sampled = true;
  v.n = distances.size();
  v.distances = distances;
  v.expected = negative_mean(distances);

  Rng rng(seed);
  std::vector<std::size_t> perm(distances.size());
  std::iota(perm.begin(), perm.end(), 0);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t s = 0; s < std::max<std::size_t>(samples, 1); ++s) {
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < perm.size(); ++r) acc -= distances[perm[r]];
    acc /= static_cast<double>(perm.size());
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  v.z = lo;
  v.z_prime = v.expected;
  v.column_spread = hi - lo;
  v.best_pure_value = -*std::max_element(distances.begin(), distances.end());
  if (v.column_spread > kGameTolerance) {
    v.violations.push_back(describe("sampled column spread", v.column_spread, 0.0));
  }
  if (std::abs(v.z - v.expected) > kGameTolerance) {
    v.violations.push_back(describe("uniform value", v.z, v.expected));
  }
  v.certified = v.violations.empty();
  return v;
}

}  // namespace distval
