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

#include "distval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "distval/error.hpp"

namespace distval {
namespace {

void require_matching(const ValueVector& a, const ValueVector& b) {
  if (a.values.size() != a.ids.size() || b.values.size() != b.ids.size()) {
    throw InputError("value vector: values and ids differ in length");
  }
  if (a.size() != b.size()) {
    throw InputError("value vectors differ in length: " +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.ids[i] != b.ids[i]) {
      throw InputError("value vectors disagree on vendor id at position " +
                       std::to_string(i) + ": '" + a.ids[i] + "' vs '" +
                       b.ids[i] + "'");
    }
  }
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

ValueVector ValueVector::indexed(std::vector<double> values) {
  ValueVector out{std::move(values), {}};
  out.ids.reserve(out.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.ids.push_back(std::to_string(i));
  }
  return out;
}

double l2_err(const ValueVector& a, const ValueVector& b) {
  require_matching(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double l_inf_err(const ValueVector& a, const ValueVector& b) {
  require_matching(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  return worst;
}

std::size_t inversions(const ValueVector& nu, const ValueVector& nu_star) {
  require_matching(nu, nu_star);
  std::size_t count = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    for (std::size_t j = i + 1; j < nu.size(); ++j) {
      const bool star_i_above = nu_star.values[i] > nu_star.values[j];
      const bool star_j_above = nu_star.values[j] > nu_star.values[i];
      if ((star_i_above && nu.values[i] < nu.values[j]) ||
          (star_j_above && nu.values[j] < nu.values[i])) {
        ++count;
      }
    }
  }
  return count;
}

double pearson(const ValueVector& a, const ValueVector& b) {
  require_matching(a, b);
  if (a.size() < 2) throw InputError("pearson needs at least two values");
  const double ma = mean_of(a.values);
  const double mb = mean_of(b.values);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a.values[i] - ma;
    const double db = b.values[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw InputError("pearson is undefined for a constant vector");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

LinearFit linear_regression(const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InputError("linear regression needs two equal-length vectors of "
                     "at least two values");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InputError("linear regression: constant regressor");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.intercept + fit.slope * x[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace distval
