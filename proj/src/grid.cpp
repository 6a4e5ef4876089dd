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

#include "fidroute/grid.hpp"

#include <cmath>
#include <string>

#include "fidroute/error.hpp"

namespace fidroute {

CapacityGrid::CapacityGrid(int steps_per_octave, int depth_octaves)
    : steps_per_octave_(steps_per_octave), depth_octaves_(depth_octaves) {
  if (steps_per_octave < 1 || depth_octaves < 1) {
    throw ConfigError("capacity grid requires steps_per_octave >= 1 and "
                      "depth_octaves >= 1, got m=" +
                      std::to_string(steps_per_octave) +
                      " D=" + std::to_string(depth_octaves));
  }
  const std::size_t n =
      static_cast<std::size_t>(steps_per_octave) * depth_octaves + 1;
  capacities_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    capacities_[k] =
        0.5 * std::exp2(-static_cast<double>(k) / steps_per_octave);
  }
}

std::optional<std::size_t> CapacityGrid::index_at_or_below(double c) const {
  if (!(c > 0.0)) return std::nullopt;
  if (c >= capacities_.front()) return 0;
  // Rounding in the caller's computation of c must not shift the index, so
  // a grid point within one part in 1e12 of c counts as "at or below".
  const double tol = 1.0 + 1e-12;
  double guess = -steps_per_octave_ * (std::log2(c) + 1.0);
  auto k = static_cast<std::ptrdiff_t>(std::ceil(guess - 1e-9));
  if (k < 0) k = 0;
  while (k > 0 && capacities_[k - 1] <= c * tol) --k;
  while (k < static_cast<std::ptrdiff_t>(capacities_.size()) &&
         capacities_[k] > c * tol) {
    ++k;
  }
  if (k >= static_cast<std::ptrdiff_t>(capacities_.size())) return std::nullopt;
  return static_cast<std::size_t>(k);
}

}  // namespace fidroute
