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

#ifndef DISTVAL_METRICS_HPP_
#define DISTVAL_METRICS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace distval {

// Per-vendor values with parallel vendor ids.
struct ValueVector {
  std::vector<double> values;
  std::vector<std::string> ids;

  // Ids "0", "1", ... for anonymous vectors.
  static ValueVector indexed(std::vector<double> values);
  std::size_t size() const { return values.size(); }
};

double l2_err(const ValueVector& a, const ValueVector& b);
double l_inf_err(const ValueVector& a, const ValueVector& b);

// Unordered pairs {i, j} with nu_star_i > nu_star_j and nu_i < nu_j (in
// either orientation). Ties in either vector never count.
std::size_t inversions(const ValueVector& nu, const ValueVector& nu_star);

// Pearson correlation. Throws InputError for length < 2 or a constant
// vector.
double pearson(const ValueVector& a, const ValueVector& b);

// Ordinary least squares of y on x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_regression(const std::vector<double>& x,
                            const std::vector<double>& y);

}  // namespace distval

#endif  // DISTVAL_METRICS_HPP_
