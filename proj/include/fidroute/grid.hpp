// Copyright 2026 The fidroute Authors
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

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace fidroute {

// Geometric capacity discretization shared by all curves:
//
//   c_k = (1/2) * 2^(-k/m),   k = 0 .. m*D
//
// anchored at c_0 = 1/2, the hard cap on the single-pair generation
// probability of the channel model. The grid is closed under capacity
// products up to an index shift: c_i * c_j = c_{i+j+m}, which is what makes
// the single-model curve concatenation exact on grid indices.
class CapacityGrid {
 public:
  CapacityGrid(int steps_per_octave, int depth_octaves);

  int steps_per_octave() const { return steps_per_octave_; }
  int depth_octaves() const { return depth_octaves_; }
  std::size_t size() const { return capacities_.size(); }

  double capacity(std::size_t k) const { return capacities_[k]; }
  const std::vector<double>& capacities() const { return capacities_; }

  /// Smallest index k with c_k <= c (the largest grid capacity not above c);
  /// nullopt when c lies below the grid floor. On-grid inputs map to their
  /// own index despite rounding in the caller's arithmetic.
  std::optional<std::size_t> index_at_or_below(double c) const;

  bool same_shape(const CapacityGrid& other) const {
    return steps_per_octave_ == other.steps_per_octave_ &&
           depth_octaves_ == other.depth_octaves_;
  }

 private:
  int steps_per_octave_;
  int depth_octaves_;
  std::vector<double> capacities_;
};

using GridPtr = std::shared_ptr<const CapacityGrid>;

inline GridPtr make_grid(int steps_per_octave, int depth_octaves) {
  return std::make_shared<const CapacityGrid>(steps_per_octave, depth_octaves);
}

}  // namespace fidroute
