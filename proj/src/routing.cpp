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

#include "fidroute/routing.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "fidroute/error.hpp"

namespace fidroute {

std::uint64_t LinkCurveSet::key(int u, int v) {
  const auto [lo, hi] = std::minmax(u, v);
  return (static_cast<std::uint64_t>(lo) << 32) |
         static_cast<std::uint32_t>(hi);
}

int LinkCurveSet::index_of(int u, int v) const {
  const auto it = link_index.find(key(u, v));
  if (it == link_index.end()) {
    throw DomainError("no link between nodes " + std::to_string(u) + " and " +
                      std::to_string(v));
  }
  return it->second;
}

std::shared_ptr<const LinkCurveSet> build_link_curves(const Network& network,
                                                      GridPtr grid) {
  auto set = std::make_shared<LinkCurveSet>();
  set->grid = grid;
  set->curves.reserve(network.links().size());
  for (std::size_t i = 0; i < network.links().size(); ++i) {
    const Link& l = network.links()[i];
    set->curves.push_back(build_link_curve(l.params, grid));
    set->link_index.emplace(LinkCurveSet::key(l.u, l.v), static_cast<int>(i));
  }
  return set;
}

CurveRegistry::CurveRegistry(GridPtr grid, int source, Model model,
                             std::shared_ptr<const LinkCurveSet> links,
                             std::vector<EnvelopeEntry> envelopes,
                             std::vector<std::vector<int>> paths)
    : grid_(std::move(grid)),
      source_(source),
      model_(model),
      links_(std::move(links)),
      envelopes_(std::move(envelopes)),
      paths_(std::move(paths)) {}

const EnvelopeEntry& CurveRegistry::envelope(int node) const {
  if (node < 0 || node >= node_count()) {
    throw DomainError("node " + std::to_string(node) + " outside [0," +
                      std::to_string(node_count()) + ")");
  }
  return envelopes_[node];
}

const std::vector<int>& CurveRegistry::path_nodes(std::int32_t path_id) const {
  if (path_id < 0 || static_cast<std::size_t>(path_id) >= paths_.size()) {
    throw DomainError("unknown path id " + std::to_string(path_id));
  }
  return paths_[path_id];
}

namespace {

struct Pending {
  std::vector<int> nodes;
  FidelityCurve curve;
};

struct QueueKey {
  int hops;
  int terminal;
  std::uint64_t seq;
  std::size_t slot;
};

struct KeyAfter {
  bool operator()(const QueueKey& a, const QueueKey& b) const {
    if (a.hops != b.hops) return a.hops > b.hops;
    if (a.terminal != b.terminal) return a.terminal > b.terminal;
    return a.seq > b.seq;
  }
};

}  // namespace

RouteResult route_from_source(const Network& network,
                              std::shared_ptr<const LinkCurveSet> links,
                              int source, Model model,
                              const RouteOptions& options) {
  if (source < 0 || source >= network.node_count()) {
    throw DomainError("source node " + std::to_string(source) +
                      " outside [0," + std::to_string(network.node_count()) +
                      ")");
  }
  if (links->curves.size() != network.links().size()) {
    throw ConfigError("link curve set does not match the network");
  }
  if (options.max_hops && *options.max_hops < 1) {
    throw ConfigError("max_hops must be at least 1, got " +
                      std::to_string(*options.max_hops));
  }
  const auto start = std::chrono::steady_clock::now();
  const GridPtr grid = links->grid;

  std::vector<EnvelopeEntry> envelopes(network.node_count(),
                                       EnvelopeEntry(grid));
  std::vector<std::vector<int>> paths;
  std::vector<Pending> pool;
  std::priority_queue<QueueKey, std::vector<QueueKey>, KeyAfter> queue;
  std::uint64_t seq = 0;

  auto push = [&](std::vector<int> nodes, FidelityCurve curve) {
    const int hops = static_cast<int>(nodes.size()) - 1;
    const int terminal = nodes.back();
    pool.push_back({std::move(nodes), std::move(curve)});
    queue.push({hops, terminal, seq++, pool.size() - 1});
  };

  RoutingStats stats;
  push({source}, FidelityCurve::unit(grid));

  while (!queue.empty()) {
    const QueueKey top = queue.top();
    queue.pop();
    Pending current = std::move(pool[top.slot]);
    pool[top.slot].nodes.shrink_to_fit();
    ++stats.visited_paths;

    const int node = current.nodes.back();
    EnvelopeEntry& envelope = envelopes[node];
    if (options.prune && !envelope.improved_by(current.curve)) {
      continue;  // every point is already covered: dominated or equal
    }
    const auto path_id = static_cast<std::int32_t>(paths.size());
    paths.push_back(current.nodes);
    envelope.merge(current.curve, path_id);

    if (options.max_hops && top.hops >= *options.max_hops) continue;
    for (const auto& [neighbor, link] : network.adjacency()[node]) {
      if (std::find(current.nodes.begin(), current.nodes.end(), neighbor) !=
          current.nodes.end()) {
        continue;  // simple paths only
      }
      std::vector<int> extended(current.nodes);
      extended.push_back(neighbor);
      const FidelityCurve& link_curve = links->curves[link].curve;
      // the hop-0 self path is the concatenation identity
      FidelityCurve curve = top.hops == 0
                                ? link_curve
                                : concat(current.curve, link_curve, model);
      push(std::move(extended), std::move(curve));
    }
  }

  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {CurveRegistry(grid, source, model, std::move(links),
                        std::move(envelopes), std::move(paths)),
          stats};
}

RouteResult route_from_source(const Network& network, int source, Model model,
                              GridPtr grid, const RouteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto links = build_link_curves(network, std::move(grid));
  RouteResult result = route_from_source(network, std::move(links), source,
                                         model, options);
  // include curve construction in the reported routing time
  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

PathExtraction extract_path(const CurveRegistry& registry, int target,
                            double capacity) {
  if (target < 0 || target >= registry.node_count()) {
    throw DomainError("target node " + std::to_string(target) +
                      " outside [0," + std::to_string(registry.node_count()) +
                      ")");
  }
  const CapacityGrid& grid = registry.grid();
  const auto snapped = grid.index_at_or_below(capacity);
  if (!snapped) {
    throw NoRouteError("no grid capacity at or below " +
                       std::to_string(capacity));
  }
  const std::size_t k = *snapped;
  const EnvelopeEntry& envelope = registry.envelope(target);
  if (envelope.path_id(k) < 0 || envelope.gamma(k) == 0.0) {
    throw NoRouteError("node " + std::to_string(target) +
                       " has no path with nonzero fidelity at capacity " +
                       std::to_string(grid.capacity(k)));
  }

  PathExtraction out;
  out.nodes = registry.path_nodes(envelope.path_id(k));
  out.gamma = envelope.gamma(k);
  out.capacity = grid.capacity(k);

  const LinkCurveSet& links = registry.link_curves();
  const auto hops = out.nodes.size() - 1;
  if (hops == 0) return out;

  std::vector<int> link_of_hop(hops);
  for (std::size_t t = 0; t < hops; ++t) {
    link_of_hop[t] = links.index_of(out.nodes[t], out.nodes[t + 1]);
  }

  // per-link grid index each link is asked to run at
  std::vector<std::size_t> split(hops, k);
  if (registry.model() == Model::single && hops > 1) {
    // re-run the concatenation with argument tracking, then walk back
    std::vector<std::vector<std::uint32_t>> argmax(hops);
    FidelityCurve acc = links.curves[link_of_hop[0]].curve;
    for (std::size_t t = 1; t < hops; ++t) {
      acc = concat_single_with_argmax(acc, links.curves[link_of_hop[t]].curve,
                                      argmax[t]);
    }
    const auto m = static_cast<std::size_t>(grid.steps_per_octave());
    std::size_t idx = k;
    for (std::size_t t = hops - 1; t >= 1; --t) {
      const std::size_t i = argmax[t][idx];
      split[t] = idx - m - i;
      idx = i;
    }
    split[0] = idx;
  }

  out.link_capacities.resize(hops);
  for (std::size_t t = 0; t < hops; ++t) {
    const LinkCurve& lc = links.curves[link_of_hop[t]];
    // a repaired point reports the capacity that actually delivers its value
    out.link_capacities[t] = grid.capacity(lc.operating_index[split[t]]);
  }
  return out;
}

std::string registry_to_json(const CurveRegistry& registry,
                             const RoutingStats& stats) {
  nlohmann::json j;
  j["V"] = registry.node_count();
  j["source"] = registry.source();
  j["model"] = to_string(registry.model());
  j["grid"] = {{"m", registry.grid().steps_per_octave()},
               {"depth", registry.grid().depth_octaves()}};
  j["visited_paths"] = stats.visited_paths;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (int node = 0; node < registry.node_count(); ++node) {
    const EnvelopeEntry& e = registry.envelope(node);
    nodes.push_back({{"gamma", e.gammas()}, {"path_ids", e.path_ids()}});
  }
  auto& paths = j["paths"] = nlohmann::json::object();
  for (std::size_t id = 0; id < registry.path_count(); ++id) {
    paths[std::to_string(id)] =
        registry.path_nodes(static_cast<std::int32_t>(id));
  }
  return j.dump(2) + "\n";
}

std::string registry_to_csv(const CurveRegistry& registry) {
  std::ostringstream out;
  out << "node,capacity,gamma,fidelity\n";
  out.precision(17);
  for (int node = 0; node < registry.node_count(); ++node) {
    const EnvelopeEntry& e = registry.envelope(node);
    for (std::size_t k = 0; k < registry.grid().size(); ++k) {
      out << node << ',' << registry.grid().capacity(k) << ',' << e.gamma(k)
          << ',' << fidelity_from_werner(e.gamma(k)) << '\n';
    }
  }
  return out.str();
}

}  // namespace fidroute
