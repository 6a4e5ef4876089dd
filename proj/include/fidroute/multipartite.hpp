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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fidroute/curves.hpp"
#include "fidroute/grid.hpp"
#include "fidroute/network.hpp"
#include "fidroute/routing.hpp"

namespace fidroute {

/// Fidelity of the GHZ state assembled from three Werner pairs with the
/// given Werner parameters. Symmetric in its arguments and non-decreasing
/// in each of them; 1 for three perfect pairs, 1/8 for three fully mixed
/// ones.
double ghz_fidelity(double g1, double g2, double g3);

/// One grid point of a star curve: the best GHZ fidelity at the star rate
/// together with the rate each branch runs at. In the flow model the three
/// branch capacities all equal the star rate; in the single model their
/// product does.
struct StarPoint {
  double fidelity = 0.0;
  int source = -1;
  std::array<double, 3> branch_capacities{0.0, 0.0, 0.0};
};

/// Star curve for a single candidate source, without source attribution.
struct StarCurve {
  GridPtr grid;
  std::vector<double> fidelity;
  std::vector<std::array<double, 3>> branch_capacities;
};

/// GHZ star fidelity curve selected over all candidate sources.
///
/// For the single model the curve lives on a coarsened grid (fewer steps
/// per octave than the routing grid); the flow model keeps the routing
/// grid. Points where no source can serve all three targets have fidelity
/// zero and source -1.
struct StarResult {
  GridPtr grid;
  Model model = Model::flow;
  std::array<int, 3> targets{-1, -1, -1};
  std::vector<StarPoint> points;
};

struct StarOptions {
  /// Steps per octave of the single-model search grid. Must divide the
  /// routing grid's steps per octave. Ignored by the flow model.
  int star_steps_per_octave = 8;
  /// Hop bound forwarded to the three routing runs.
  std::optional<int> max_hops;
};

/// Combines the three source-to-target curves of one candidate source into
/// its star curve.
///
/// Flow model: the star runs all branches at the common rate c, so the
/// curve is the pointwise ghz_fidelity of the three inputs. Single model:
/// the star rate is the product of the branch rates; every split of the
/// target rate into three grid capacities is searched (two free indices,
/// the third determined by the product constraint) on a grid coarsened to
/// star_steps_per_octave. A split counts only when all three branches have
/// nonzero Werner parameter; otherwise no three-partite state reaches the
/// targets at that rate.
StarCurve star_curve(const FidelityCurve& c1, const FidelityCurve& c2,
                     const FidelityCurve& c3, Model model,
                     int star_steps_per_octave = 8);

/// Picks, per grid point, the source whose star curve is highest across the
/// whole network. Ties go to the smaller source id. Sources equal to a
/// target use the trivial self path (unit curve) for that branch.
///
/// When stats is given it receives the totals of the three routing runs.
/// Throws NoRouteError when no source yields a feasible star at any rate.
StarResult select_star(const Network& network, int t1, int t2, int t3,
                       Model model, GridPtr grid,
                       const StarOptions& options = {},
                       RoutingStats* stats = nullptr);

std::string star_to_json(const StarResult& result);
std::string star_to_csv(const StarResult& result);

}  // namespace fidroute
