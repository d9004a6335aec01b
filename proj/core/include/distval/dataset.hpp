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

#ifndef DISTVAL_DATASET_HPP_
#define DISTVAL_DATASET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace distval {

using Point = std::vector<double>;

// An ordered, nonempty collection of fixed-dimension real feature vectors
// from one vendor. Rows are stored contiguously.
class Dataset {
 public:
  // Throws InputError unless flat.size() is a positive multiple of dim and
  // every value is finite.
  Dataset(std::string id, std::size_t dim, std::vector<double> flat);

  static Dataset from_points(std::string id, const std::vector<Point>& points);
  // One-dimensional convenience constructor.
  static Dataset from_values(std::string id, const std::vector<double>& values);

  const std::string& id() const { return id_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return flat_.size() / dim_; }
  std::span<const double> row(std::size_t i) const {
    return {flat_.data() + i * dim_, dim_};
  }
  std::span<const double> flat() const { return flat_; }
  Point point(std::size_t i) const;

  // Same rows in the same order (ids are not compared).
  bool same_points(const Dataset& other) const {
    return dim_ == other.dim_ && flat_ == other.flat_;
  }

  Dataset with_id(std::string id) const { return {std::move(id), dim_, flat_}; }
  // Rows [0, count) as a new dataset; 1 <= count <= size().
  Dataset prefix(std::size_t count) const;

 private:
  std::string id_;
  std::size_t dim_;
  std::vector<double> flat_;
};

// Exact finite-support probability distribution. Probabilities are
// nonnegative and sum to one within 1e-12; support points are distinct.
class DiscretePmf {
 public:
  static constexpr double kSumTolerance = 1e-12;

  DiscretePmf(std::size_t dim, std::vector<double> support_flat,
              std::vector<double> probs);

  static DiscretePmf point_mass(const Point& x);
  // Support {0, 1, ..., probs.size()-1} in one dimension.
  static DiscretePmf on_integers(const std::vector<double>& probs);
  // Sum_i weight_i * pmf_i on the union of supports; zero weights are
  // skipped. Weights must be nonnegative and sum to one.
  static DiscretePmf mixture(
      const std::vector<std::pair<double, const DiscretePmf*>>& parts);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> point(std::size_t i) const {
    return {support_.data() + i * dim_, dim_};
  }
  std::span<const double> support_flat() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_[i]; }
  // Mass at x, zero when x is outside the support.
  double mass_at(std::span<const double> x) const;

  // Index of the atom that a uniform draw u in [0,1) lands on.
  std::size_t quantile_index(double u) const;

 private:
  std::size_t dim_;
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

// Largest pointwise probability difference over the union of supports.
double max_abs_difference(const DiscretePmf& a, const DiscretePmf& b);

}  // namespace distval

#endif  // DISTVAL_DATASET_HPP_
