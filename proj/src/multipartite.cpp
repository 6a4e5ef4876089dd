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

#include "fidroute/multipartite.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "fidroute/error.hpp"
#include "fidroute/routing.hpp"

namespace fidroute {

namespace {

void check_unit_interval(double g, const char* name) {
  if (!(g >= 0.0 && g <= 1.0)) {
    throw DomainError(std::string(name) + " = " + std::to_string(g) +
                      " outside [0,1]");
  }
}

// Every stride-th sample of a curve, reinterpreted on the coarse grid.
std::vector<double> downsample(const FidelityCurve& curve,
                               const CapacityGrid& coarse, int stride) {
  std::vector<double> out(coarse.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = curve.value(k * static_cast<std::size_t>(stride));
  }
  return out;
}

std::size_t first_nonzero(const std::vector<double>& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > 0.0) return k;
  }
  return v.size();
}

StarCurve flow_star(const FidelityCurve& c1, const FidelityCurve& c2,
                    const FidelityCurve& c3) {
  StarCurve out;
  out.grid = c1.grid_ptr();
  const std::size_t n = c1.size();
  out.fidelity.assign(n, 0.0);
  out.branch_capacities.assign(n, {0.0, 0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const double g1 = c1.value(k);
    const double g2 = c2.value(k);
    const double g3 = c3.value(k);
    if (g1 <= 0.0 || g2 <= 0.0 || g3 <= 0.0) continue;
    const double c = c1.grid().capacity(k);
    out.fidelity[k] = ghz_fidelity(g1, g2, g3);
    out.branch_capacities[k] = {c, c, c};
  }
  return out;
}

StarCurve single_star(const FidelityCurve& c1, const FidelityCurve& c2,
                      const FidelityCurve& c3, int star_steps) {
  const CapacityGrid& fine = c1.grid();
  if (star_steps < 1 || fine.steps_per_octave() % star_steps != 0) {
    throw ConfigError("star grid steps " + std::to_string(star_steps) +
                      " must divide " +
                      std::to_string(fine.steps_per_octave()));
  }
  const int stride = fine.steps_per_octave() / star_steps;
  GridPtr coarse = stride == 1
                       ? c1.grid_ptr()
                       : make_grid(star_steps, fine.depth_octaves());

  StarCurve out;
  out.grid = coarse;
  const std::size_t n = coarse->size();
  out.fidelity.assign(n, 0.0);
  out.branch_capacities.assign(n, {0.0, 0.0, 0.0});

  const std::vector<double> g1 = downsample(c1, *coarse, stride);
  const std::vector<double> g2 = downsample(c2, *coarse, stride);
  const std::vector<double> g3 = downsample(c3, *coarse, stride);
  const std::size_t f1 = first_nonzero(g1);
  const std::size_t f2 = first_nonzero(g2);
  const std::size_t f3 = first_nonzero(g3);
  if (f1 == n || f2 == n || f3 == n) return out;

  // The product of three grid capacities lands back on the grid with the
  // index sum offset by two octaves (each factor carries a 1/2 anchor).
  const auto m = static_cast<std::size_t>(star_steps);
  for (std::size_t k = 2 * m + f1 + f2 + f3; k < n; ++k) {
    const std::size_t s = k - 2 * m;
    double best = 0.0;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    const std::size_t i_hi = std::min(s - f2 - f3, n - 1);
    for (std::size_t i = f1; i <= i_hi; ++i) {
      if (g1[i] <= 0.0) continue;
      const std::size_t r = s - i;
      const std::size_t j_lo = r >= n ? r - (n - 1) : f2;
      const std::size_t j_hi = r - f3;
      for (std::size_t j = std::max(f2, j_lo); j <= j_hi; ++j) {
        if (g2[j] <= 0.0) continue;
        const double gl = g3[r - j];
        if (gl <= 0.0) continue;
        const double f = ghz_fidelity(g1[i], g2[j], gl);
        if (f > best) {
          best = f;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best > 0.0) {
      out.fidelity[k] = best;
      out.branch_capacities[k] = {coarse->capacity(best_i),
                                  coarse->capacity(best_j),
                                  coarse->capacity(s - best_i - best_j)};
    }
  }
  return out;
}

}  // namespace

double ghz_fidelity(double g1, double g2, double g3) {
  check_unit_interval(g1, "gamma 1");
  check_unit_interval(g2, "gamma 2");
  check_unit_interval(g3, "gamma 3");
  const double plus = 0.125 * (1.0 + g1) * (1.0 + g2) * (1.0 + g3);
  const double minus = 0.125 * (1.0 - g1) * (1.0 - g2) * (1.0 - g3);
  return 0.5 * (plus + minus + g1 * g2 * g3);
}

StarCurve star_curve(const FidelityCurve& c1, const FidelityCurve& c2,
                     const FidelityCurve& c3, Model model,
                     int star_steps_per_octave) {
  detail::require_same_grid(c1.grid(), c2.grid(), "star_curve");
  detail::require_same_grid(c1.grid(), c3.grid(), "star_curve");
  return model == Model::flow ? flow_star(c1, c2, c3)
                              : single_star(c1, c2, c3,
                                            star_steps_per_octave);
}

StarResult select_star(const Network& network, int t1, int t2, int t3,
                       Model model, GridPtr grid, const StarOptions& options,
                       RoutingStats* stats) {
  const std::array<int, 3> targets{t1, t2, t3};
  for (int t : targets) {
    if (t < 0 || t >= network.node_count()) {
      throw DomainError("target node " + std::to_string(t) + " outside [0," +
                        std::to_string(network.node_count()) + ")");
    }
  }
  if (t1 == t2 || t1 == t3 || t2 == t3) {
    throw DomainError("star targets must be three distinct nodes");
  }

  auto links = build_link_curves(network, grid);
  const RouteOptions route_options{options.max_hops, true};
  std::array<std::optional<CurveRegistry>, 3> registries;
  for (int i = 0; i < 3; ++i) {
    RouteResult run =
        route_from_source(network, links, targets[i], model, route_options);
    if (stats != nullptr) {
      stats->visited_paths += run.stats.visited_paths;
      stats->elapsed_seconds += run.stats.elapsed_seconds;
    }
    registries[i].emplace(std::move(run.registry));
  }

  StarResult result;
  result.model = model;
  result.targets = targets;
  for (int s = 0; s < network.node_count(); ++s) {
    const StarCurve curve = star_curve(registries[0]->envelope(s).as_curve(),
                                       registries[1]->envelope(s).as_curve(),
                                       registries[2]->envelope(s).as_curve(),
                                       model, options.star_steps_per_octave);
    if (result.points.empty()) {
      result.grid = curve.grid;
      result.points.resize(curve.fidelity.size());
    }
    for (std::size_t k = 0; k < curve.fidelity.size(); ++k) {
      if (curve.fidelity[k] > result.points[k].fidelity) {
        result.points[k] = {curve.fidelity[k], s, curve.branch_capacities[k]};
      }
    }
  }

  const bool feasible =
      std::any_of(result.points.begin(), result.points.end(),
                  [](const StarPoint& p) { return p.source >= 0; });
  if (!feasible) {
    throw NoRouteError(
        "no source reaches all three targets with nonzero fidelity");
  }
  return result;
}

std::string star_to_json(const StarResult& result) {
  nlohmann::json j;
  j["model"] = to_string(result.model);
  j["targets"] = result.targets;
  j["grid"] = {{"m", result.grid->steps_per_octave()},
               {"depth", result.grid->depth_octaves()}};
  auto& points = j["points"] = nlohmann::json::array();
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const StarPoint& p = result.points[k];
    points.push_back({{"capacity", result.grid->capacity(k)},
                      {"fidelity", p.fidelity},
                      {"source", p.source},
                      {"c1", p.branch_capacities[0]},
                      {"c2", p.branch_capacities[1]},
                      {"c3", p.branch_capacities[2]}});
  }
  return j.dump(2) + "\n";
}

std::string star_to_csv(const StarResult& result) {
  std::ostringstream out;
  out << "capacity,fidelity,source,c1,c2,c3\n";
  out.precision(17);
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const StarPoint& p = result.points[k];
    out << result.grid->capacity(k) << ',' << p.fidelity << ',' << p.source
        << ',' << p.branch_capacities[0] << ',' << p.branch_capacities[1]
        << ',' << p.branch_capacities[2] << '\n';
  }
  return out.str();
}

}  // namespace fidroute
