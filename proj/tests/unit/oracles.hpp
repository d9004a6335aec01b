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

// Independent reference computations used only by tests. Nothing here calls
// into the library's numeric code paths.
#ifndef DISTVAL_TESTS_ORACLES_HPP_
#define DISTVAL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "distval/dataset.hpp"
#include "distval/rng.hpp"

namespace distval::oracle {

inline double rbf(const std::vector<double>& x, const std::vector<double>& y,
                  double sigma) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::exp(-s / (2.0 * sigma * sigma));
}

inline double naive_gram(const Dataset& a, const Dataset& b, double sigma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      s += rbf(a.point(i), b.point(j), sigma);
    }
  }
  return s;
}

inline double naive_mmd_biased(const Dataset& a, const Dataset& b,
                               double sigma) {
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  const double r = naive_gram(a, a, sigma) / (m * m) +
                   naive_gram(b, b, sigma) / (n * n) -
                   2.0 * naive_gram(a, b, sigma) / (m * n);
  return std::sqrt(std::max(0.0, r));
}

// E k(X,X') - 2 E k(X,Y) + E k(Y,Y') from the three expectations.
inline double expectation_mmd(const DiscretePmf& p, const DiscretePmf& q,
                              double sigma) {
  auto e = [&](const DiscretePmf& a, const DiscretePmf& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        auto x = a.point(i);
        auto y = b.point(j);
        s += a.prob(i) * b.prob(j) *
             rbf({x.begin(), x.end()}, {y.begin(), y.end()}, sigma);
      }
    }
    return s;
  };
  return std::sqrt(std::max(0.0, e(p, p) - 2.0 * e(p, q) + e(q, q)));
}

// Dense probability vector of a 1-D integer pmf on {0..len-1}.
inline std::vector<double> dense(const DiscretePmf& p, std::size_t len) {
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[static_cast<std::size_t>(p.point(i)[0])] += p.prob(i);
  }
  return out;
}

inline std::size_t brute_inversions(const std::vector<double>& nu,
                                    const std::vector<double>& star) {
  // Ordered pairs, halved, exactly as the defining double sum.
  std::size_t twice = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (star[i] > star[j] && nu[i] < nu[j]) ++twice;
      if (star[j] > star[i] && nu[j] < nu[i]) ++twice;
    }
  }
  return twice / 2;
}

inline DiscretePmf random_pmf(Rng& rng, std::size_t len) {
  std::vector<double> w(len);
  double t = 0.0;
  for (auto& v : w) {
    v = rng.uniform() + 1e-3;
    t += v;
  }
  for (auto& v : w) v /= t;
  return DiscretePmf::on_integers(w);
}

}  // namespace distval::oracle

#endif  // DISTVAL_TESTS_ORACLES_HPP_
