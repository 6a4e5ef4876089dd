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
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fidroute/curves.hpp"
#include "fidroute/network.hpp"

namespace fidroute {

/// Repaired curves for every link of a network, shared between routing runs
/// and path read-back.
struct LinkCurveSet {
  GridPtr grid;
  std::vector<LinkCurve> curves;                    // per link index
  std::unordered_map<std::uint64_t, int> link_index;  // packed (u,v) -> index

  static std::uint64_t key(int u, int v);
  int index_of(int u, int v) const;
};

std::shared_ptr<const LinkCurveSet> build_link_curves(const Network& network,
                                                      GridPtr grid);

/// A discovered simple path with its end-to-end curve.
struct PathRecord {
  std::vector<int> nodes;  // source first
  FidelityCurve curve;

  int hops() const { return static_cast<int>(nodes.size()) - 1; }
};

struct RouteOptions {
  std::optional<int> max_hops;
  bool prune = true;  // discard paths the node envelope already covers
};

struct RoutingStats {
  std::uint64_t visited_paths = 0;  // priority-queue pops
  double elapsed_seconds = 0.0;
};

// Source-to-all result: per node, the pointwise-best Werner value over all
// discovered paths with, per grid point, the id of the achieving path.
class CurveRegistry {
 public:
  CurveRegistry(GridPtr grid, int source, Model model,
                std::shared_ptr<const LinkCurveSet> links,
                std::vector<EnvelopeEntry> envelopes,
                std::vector<std::vector<int>> paths);

  int node_count() const { return static_cast<int>(envelopes_.size()); }
  int source() const { return source_; }
  Model model() const { return model_; }
  const CapacityGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const LinkCurveSet& link_curves() const { return *links_; }

  const EnvelopeEntry& envelope(int node) const;
  std::size_t path_count() const { return paths_.size(); }
  const std::vector<int>& path_nodes(std::int32_t path_id) const;

 private:
  GridPtr grid_;
  int source_;
  Model model_;
  std::shared_ptr<const LinkCurveSet> links_;
  std::vector<EnvelopeEntry> envelopes_;
  std::vector<std::vector<int>> paths_;
};

struct RouteResult {
  CurveRegistry registry;
  RoutingStats stats;
};

/// Source-to-all routing over fidelity curves: hop-count-ordered priority
/// queue, dominance-pruned against per-node envelopes.
RouteResult route_from_source(const Network& network, int source, Model model,
                              GridPtr grid, const RouteOptions& options = {});

/// Same, with externally supplied link curves (grid taken from the set).
RouteResult route_from_source(const Network& network,
                              std::shared_ptr<const LinkCurveSet> links,
                              int source, Model model,
                              const RouteOptions& options = {});

/// Path read-back at a queried capacity.
struct PathExtraction {
  std::vector<int> nodes;   // source first; single element when target==source
  double gamma = 0.0;       // envelope value at the snapped grid point
  double capacity = 0.0;    // the snapped grid capacity
  /// Operating capacity per link. Under flow all links share the snapped
  /// rate; under single the capacities multiply out to it (on-grid). Links
  /// sitting on a dark-count plateau report the plateau capacity.
  std::vector<double> link_capacities;
};

PathExtraction extract_path(const CurveRegistry& registry, int target,
                            double capacity);

std::string registry_to_json(const CurveRegistry& registry,
                             const RoutingStats& stats);
/// CSV rows node,capacity,gamma,fidelity over all nodes and grid points.
std::string registry_to_csv(const CurveRegistry& registry);

}  // namespace fidroute
