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

#ifndef DISTVAL_GAME_HPP_
#define DISTVAL_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace distval {

// Zero-sum game between a buyer picking a position r and an adversary
// picking a permutation c of the vendors: R[r][c] = -d[perm_c[r]], where
// d_i = d(P*, P_i). Columns enumerate permutations in lexicographic order.
class GameInstance {
 public:
  static constexpr std::size_t kMaxPlayers = 7;

  // Throws CapacityError unless 2 <= n <= kMaxPlayers, InputError for
  // negative or non-finite distances.
  explicit GameInstance(std::vector<double> distances);

  std::size_t n() const { return distances_.size(); }
  std::size_t columns() const { return columns_; }
  const std::vector<double>& distances() const { return distances_; }
  double payoff(std::size_t r, std::size_t c) const {
    return payoff_[r * columns_ + c];
  }
  // Index into distances() of the vendor at position r of permutation c.
  std::size_t vendor_at(std::size_t r, std::size_t c) const {
    return perms_[c * distances_.size() + r];
  }

 private:
  std::vector<double> distances_;
  std::size_t columns_ = 0;
  std::vector<std::size_t> perms_;
  std::vector<double> payoff_;  // row-major n x n!
};

GameInstance build_game(const std::vector<double>& distances);

// Value guaranteed by the uniform row strategy: min over columns of the
// row-averaged payoff. Throws PropertyViolation if the row average varies
// across columns by more than 1e-12.
double uniform_strategy_value(const GameInstance& g);

struct GameVerification {
  std::size_t n = 0;
  std::vector<double> distances;
  double z = 0.0;             // uniform-row (primal) value
  double z_prime = 0.0;       // uniform-column (dual) value
  double expected = 0.0;      // -mean(distances)
  double column_spread = 0.0; // max - min of the uniform-row payoff per column
  double best_pure_value = 0.0;
  double best_grid_value = 0.0;
  std::size_t grid_points = 0;
  bool sampled = false;       // large-n spot check instead of full enumeration
  bool certified = false;
  std::vector<std::string> violations;
};

inline constexpr double kGameTolerance = 1e-12;

// Certifies that the uniform row strategy is optimal: z equals the dual
// value z' of the uniform column strategy (weak duality), z = -mean(d), and
// neither a pure row nor any mixed row on a simplex grid of the given
// resolution (0 = automatic) beats z.
GameVerification verify_minmax(const GameInstance& g,
                               std::size_t grid_resolution = 0);

// For n beyond kMaxPlayers: checks the column independence of the uniform
// row payoff on `samples` random permutations and reports z = -mean(d).
GameVerification verify_minmax_sampled(const std::vector<double>& distances,
                                       std::size_t samples, std::uint64_t seed);

}  // namespace distval

#endif  // DISTVAL_GAME_HPP_
