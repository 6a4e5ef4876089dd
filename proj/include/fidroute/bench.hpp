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
#include <cstdint>
#include <string>
#include <vector>

#include "fidroute/curves.hpp"
#include "fidroute/grid.hpp"
#include "fidroute/network.hpp"

namespace fidroute {

/// One benchmark cell: sample statistics of the visited-path count and of
/// the routing wall time over `samples` fresh random networks.
struct ScalingRow {
  Model model = Model::flow;
  Topology topology = Topology::er;
  double k_avg = 0.0;
  int node_count = 0;
  int samples = 0;
  double visited_mean = 0.0;
  double visited_var = 0.0;
  double time_mean = 0.0;
  double time_var = 0.0;
};

struct BenchConfig {
  std::vector<Topology> topologies{Topology::er};
  std::vector<Model> models{Model::flow};
  std::vector<double> k_avg{6.0};
  std::vector<int> node_counts{100, 200, 400};
  int samples = 20;
  std::uint64_t seed = 0;
  int grid_steps_per_octave = 8;
  int grid_depth_octaves = 20;
  /// Benchmark three-target star selection instead of single-source routing.
  bool multipartite = false;
  int star_steps_per_octave = 8;
  /// Hop bound forwarded to every routing run; 0 means unbounded.
  int max_hops = 0;
  /// With timing off the time columns are written as zero, which makes the
  /// output reproducible byte for byte across machines and runs.
  bool measure_time = true;

  void validate() const;
};

struct PowerLawFit {
  double k = 0.0;
  double alpha = 0.0;
  double r_squared = 0.0;
};

/// Named fit of one column of one cell group, for the JSON report.
struct FitReport {
  std::string cell;
  PowerLawFit fit;
};

/// Runs every (topology, model, k_avg, node_count) cell of the config.
///
/// Each sample draws its own network, source (and targets in multipartite
/// mode) from an RNG stream derived from (seed, cell index, sample index),
/// so rows depend only on the config and not on execution order.
std::vector<ScalingRow> run_scaling(const BenchConfig& config);

/// Least-squares fit of ln Y against ln X: Y = k * X^alpha.
PowerLawFit fit_power_law(const std::vector<std::array<double, 2>>& points);

/// One visited-paths fit per (topology, model, k_avg) group across its node
/// counts, plus a time fit when the rows carry timing.
std::vector<FitReport> scaling_fits(const std::vector<ScalingRow>& rows);

std::string rows_to_csv(const std::vector<ScalingRow>& rows);
std::vector<ScalingRow> rows_from_csv(const std::string& text);
std::string fits_to_json(const std::vector<FitReport>& fits);

}  // namespace fidroute
