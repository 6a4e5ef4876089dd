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

#include <cstdint>
#include <vector>

#include "fidroute/curves.hpp"
#include "fidroute/network.hpp"

// Exhaustive reference implementations used as ground truth for the routing
// engine and the curve algebra. These deliberately share no machinery with
// the engine: plain depth-first enumeration of simple paths, no priority
// queue, no dominance pruning.
namespace fidroute::oracle {

struct OracleConfig {
  int max_hops = 5;           // simple-path enumeration bound, 1..7
  GridPtr grid;               // coarse grid recommended (e.g. m=8, D=20)
  bool verify_joint = false;  // cross-check each single-model path curve
                              // against the joint capacity-split optimum
  int joint_max_hops = 3;     // hop bound for that cross-check
  std::uint64_t path_cap = 2'000'000;  // enumeration guard

  void validate() const;
};

/// Pointwise-max envelope per node over every simple path from the source
/// within max_hops, each path curve built by sequential concatenation.
/// Unreached nodes hold the zero curve; the source holds the unit curve.
std::vector<FidelityCurve> brute_force_envelope(const Network& network,
                                                int source, Model model,
                                                const OracleConfig& config);

/// Single-model optimum at one grid index by exhaustive enumeration of all
/// per-link capacity assignments whose index sum composes to target_index.
/// Returns 0 when no assignment reaches that index.
double joint_single_gamma_at(const std::vector<FidelityCurve>& links,
                             std::size_t target_index);

/// Capacity-facing wrapper; snaps c to the grid point at or below it.
double joint_single_gamma(const std::vector<FidelityCurve>& links, double c,
                          const CapacityGrid& grid);

/// Checks that running every link of a flow path at the common end-to-end
/// rate is optimal: no assignment with the same bottleneck beats it by more
/// than 1e-12 at any grid point.
bool uniform_flow_check(const std::vector<FidelityCurve>& links);

/// Best GHZ star fidelity per grid point over every source node, every
/// triple of simple paths to the targets and, in the single model, every
/// grid split of the target rate. A point stays at 0 when no source serves
/// all three targets with nonzero Werner parameter.
std::vector<double> brute_force_star(const Network& network, int t1, int t2,
                                     int t3, Model model,
                                     const OracleConfig& config);

}  // namespace fidroute::oracle
