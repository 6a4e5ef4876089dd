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

#include "fidroute/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fidroute/error.hpp"
#include "fidroute/multipartite.hpp"

namespace fidroute::oracle {

void OracleConfig::validate() const {
  if (max_hops < 1 || max_hops > 7) {
    throw ConfigError("oracle max_hops must be in [1,7], got " +
                      std::to_string(max_hops));
  }
  if (!grid) throw ConfigError("oracle config has no grid");
}

namespace {

struct Enumerator {
  const Network& network;
  Model model;
  const OracleConfig& config;
  std::vector<LinkCurve> link_curves;
  std::vector<FidelityCurve> envelope;
  std::vector<char> on_path;
  std::vector<int> path_links;  // link index per hop of the current path
  std::uint64_t paths_seen = 0;

  Enumerator(const Network& net, Model mdl, const OracleConfig& cfg)
      : network(net), model(mdl), config(cfg) {
    link_curves.reserve(net.links().size());
    for (const Link& l : net.links()) {
      link_curves.push_back(build_link_curve(l.params, cfg.grid));
    }
    envelope.assign(net.node_count(), FidelityCurve::zero(cfg.grid));
    on_path.assign(net.node_count(), 0);
  }

  void merge_pointwise(int node, const FidelityCurve& curve) {
    std::vector<double> merged(envelope[node].values());
    for (std::size_t k = 0; k < merged.size(); ++k) {
      merged[k] = std::max(merged[k], curve.value(k));
    }
    envelope[node] = FidelityCurve(config.grid, std::move(merged));
  }

  void check_joint(const FidelityCurve& sequential) {
    std::vector<FidelityCurve> links;
    links.reserve(path_links.size());
    for (int e : path_links) links.push_back(link_curves[e].curve);
    for (std::size_t k = 0; k < sequential.size(); ++k) {
      const double joint = joint_single_gamma_at(links, k);
      if (std::abs(joint - sequential.value(k)) > 1e-12) {
        throw Error("sequential concatenation of a " +
                    std::to_string(path_links.size()) +
                    "-link path disagrees with the joint optimum at index " +
                    std::to_string(k) + ": " +
                    std::to_string(sequential.value(k)) + " vs " +
                    std::to_string(joint));
      }
    }
  }

  void extend(int node, const FidelityCurve& curve, int hops) {
    if (++paths_seen > config.path_cap) {
      throw InfeasibleError("simple-path enumeration exceeded " +
                            std::to_string(config.path_cap) + " paths");
    }
    merge_pointwise(node, curve);
    if (model == Model::single && config.verify_joint && hops >= 2 &&
        hops <= config.joint_max_hops) {
      check_joint(curve);
    }
    if (hops == config.max_hops) return;
    on_path[node] = 1;
    for (const auto& [neighbor, link] : network.adjacency()[node]) {
      if (on_path[neighbor]) continue;
      path_links.push_back(link);
      const FidelityCurve& link_curve = link_curves[link].curve;
      // first hop starts from the link curve itself; the empty path is the
      // concatenation identity
      if (hops == 0) {
        extend(neighbor, link_curve, 1);
      } else {
        extend(neighbor, concat(curve, link_curve, model), hops + 1);
      }
      path_links.pop_back();
    }
    on_path[node] = 0;
  }
};

}  // namespace

std::vector<FidelityCurve> brute_force_envelope(const Network& network,
                                                int source, Model model,
                                                const OracleConfig& config) {
  config.validate();
  if (source < 0 || source >= network.node_count()) {
    throw DomainError("source node " + std::to_string(source) +
                      " outside [0," + std::to_string(network.node_count()) +
                      ")");
  }
  Enumerator e(network, model, config);
  e.extend(source, FidelityCurve::unit(config.grid), 0);
  return std::move(e.envelope);
}

double joint_single_gamma_at(const std::vector<FidelityCurve>& links,
                             std::size_t target_index) {
  if (links.empty()) throw DomainError("joint optimum needs at least one link");
  const CapacityGrid& grid = links[0].grid();
  for (const FidelityCurve& l : links) {
    detail::require_same_grid(grid, l.grid(), "joint_single_gamma");
  }
  const std::size_t n = grid.size();
  if (target_index >= n) throw DomainError("target index outside the grid");
  const auto m = static_cast<std::size_t>(grid.steps_per_octave());
  const std::size_t hops = links.size();
  if (hops == 1) return links[0].value(target_index);
  const std::size_t shift = (hops - 1) * m;
  if (target_index < shift) return 0.0;  // product of capacities off-grid
  const std::size_t total = target_index - shift;

  double best = 0.0;
  // assign indices link by link; the last link takes the remainder
  auto recurse = [&](auto&& self, std::size_t link, std::size_t remaining,
                     double product) -> void {
    if (link + 1 == hops) {
      if (remaining < n) {
        const double v = product * links[link].value(remaining);
        if (v > best) best = v;
      }
      return;
    }
    const std::size_t slack = (hops - 1 - link) * (n - 1);
    const std::size_t lo = remaining > slack ? remaining - slack : 0;
    const std::size_t hi = std::min(remaining, n - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      const double v = links[link].value(i);
      if (v == 0.0) continue;  // zero factor cannot reach a positive max
      self(self, link + 1, remaining - i, product * v);
    }
  };
  recurse(recurse, 0, total, 1.0);
  return best;
}

double joint_single_gamma(const std::vector<FidelityCurve>& links, double c,
                          const CapacityGrid& grid) {
  const auto k = grid.index_at_or_below(c);
  if (!k) return 0.0;  // below the grid floor: unreachable
  return joint_single_gamma_at(links, *k);
}

bool uniform_flow_check(const std::vector<FidelityCurve>& links) {
  if (links.empty()) throw DomainError("uniform-flow check needs links");
  const CapacityGrid& grid = links[0].grid();
  for (const FidelityCurve& l : links) {
    detail::require_same_grid(grid, l.grid(), "uniform_flow_check");
  }
  const std::size_t n = grid.size();
  const std::size_t hops = links.size();

  for (std::size_t k = 0; k < n; ++k) {
    double uniform = 1.0;
    for (const FidelityCurve& l : links) uniform *= l.value(k);
    const double bound = uniform + 1e-12;

    // enumerate assignments whose bottleneck index is exactly k: the first
    // link pinned at k takes position `pin`, earlier links stay below k
    bool ok = true;
    auto recurse = [&](auto&& self, std::size_t link, std::size_t pin,
                       double product) -> void {
      if (!ok) return;
      if (link == hops) {
        if (product > bound) ok = false;
        return;
      }
      if (link == pin) {
        self(self, link + 1, pin, product * links[link].value(k));
        return;
      }
      const std::size_t limit = link < pin ? k : k + 1;  // < k before the pin
      for (std::size_t j = 0; j < limit; ++j) {
        self(self, link + 1, pin, product * links[link].value(j));
      }
    };
    for (std::size_t pin = 0; pin < hops && ok; ++pin) {
      recurse(recurse, 0, pin, 1.0);
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<double> brute_force_star(const Network& network, int t1, int t2,
                                     int t3, Model model,
                                     const OracleConfig& config) {
  config.validate();
  if (t1 == t2 || t1 == t3 || t2 == t3) {
    throw DomainError("star targets must be three distinct nodes");
  }
  // per-target best reachable gamma at each node, over all simple paths
  const std::array<std::vector<FidelityCurve>, 3> reach{
      brute_force_envelope(network, t1, model, config),
      brute_force_envelope(network, t2, model, config),
      brute_force_envelope(network, t3, model, config)};

  const CapacityGrid& grid = *config.grid;
  const std::size_t n = grid.size();
  const auto m = static_cast<std::size_t>(grid.steps_per_octave());
  std::vector<double> best(n, 0.0);

  for (int s = 0; s < network.node_count(); ++s) {
    const std::vector<double>& g1 = reach[0][s].values();
    const std::vector<double>& g2 = reach[1][s].values();
    const std::vector<double>& g3 = reach[2][s].values();
    if (model == Model::flow) {
      for (std::size_t k = 0; k < n; ++k) {
        if (g1[k] <= 0.0 || g2[k] <= 0.0 || g3[k] <= 0.0) continue;
        best[k] = std::max(best[k], ghz_fidelity(g1[k], g2[k], g3[k]));
      }
      continue;
    }
    // walk every index triple; the composed rate index grows with each
    // factor, so the innermost loop can stop at the grid edge
    for (std::size_t i = 0; i < n && i + 2 * m < n; ++i) {
      if (g1[i] <= 0.0) continue;
      for (std::size_t j = 0; i + j + 2 * m < n; ++j) {
        if (g2[j] <= 0.0) continue;
        for (std::size_t l = 0; i + j + l + 2 * m < n; ++l) {
          if (g3[l] <= 0.0) continue;
          const double f = ghz_fidelity(g1[i], g2[j], g3[l]);
          const std::size_t k = i + j + l + 2 * m;
          if (f > best[k]) best[k] = f;
        }
      }
    }
  }
  return best;
}

}  // namespace fidroute::oracle
