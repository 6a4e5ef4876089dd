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

#include "fidroute/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "fidroute/error.hpp"
#include "fidroute/multipartite.hpp"
#include "fidroute/rng.hpp"
#include "fidroute/routing.hpp"

namespace fidroute {

void BenchConfig::validate() const {
  if (topologies.empty() || models.empty() || k_avg.empty() ||
      node_counts.empty()) {
    throw ConfigError("benchmark needs at least one topology, model, "
                      "average degree and node count");
  }
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (grid_steps_per_octave < 1 || grid_depth_octaves < 1) {
    throw ConfigError("grid steps and depth must be at least 1");
  }
  for (int v : node_counts) {
    if (v < 2) {
      throw ConfigError("node counts must be at least 2, got " +
                        std::to_string(v));
    }
  }
  for (double k : k_avg) {
    if (!(k > 0.0)) {
      throw ConfigError("average degrees must be positive, got " +
                        std::to_string(k));
    }
  }
  if (multipartite &&
      (star_steps_per_octave < 1 ||
       grid_steps_per_octave % star_steps_per_octave != 0)) {
    throw ConfigError("star_steps_per_octave must divide the grid steps (" +
                      std::to_string(star_steps_per_octave) + " vs " +
                      std::to_string(grid_steps_per_octave) + ")");
  }
  if (max_hops < 0) {
    throw ConfigError("max_hops must be nonnegative, got " +
                      std::to_string(max_hops));
  }
}

namespace {

struct Accumulator {
  std::vector<double> values;

  void add(double v) { values.push_back(v); }

  double mean() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }

  double variance() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double sum = 0.0;
    for (double v : values) sum += (v - m) * (v - m);
    return sum / static_cast<double>(values.size() - 1);
  }
};

std::array<int, 3> pick_targets(Rng& rng, int node_count) {
  std::array<int, 3> t{};
  t[0] = static_cast<int>(rng.uniform_index(node_count));
  do {
    t[1] = static_cast<int>(rng.uniform_index(node_count));
  } while (t[1] == t[0]);
  do {
    t[2] = static_cast<int>(rng.uniform_index(node_count));
  } while (t[2] == t[0] || t[2] == t[1]);
  return t;
}

ScalingRow run_cell(const BenchConfig& config, GridPtr grid,
                    Topology topology, Model model, double k_avg,
                    int node_count, std::size_t cell_index) {
  Accumulator visited;
  Accumulator elapsed;
  for (int sample = 0; sample < config.samples; ++sample) {
    const std::uint64_t sample_seed = derive_seed(
        config.seed, cell_index, static_cast<std::uint64_t>(sample));
    Network network = generate_network(topology, node_count, k_avg,
                                       derive_seed(sample_seed, 0));
    Rng pick(derive_seed(sample_seed, 1));

    RoutingStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    if (config.multipartite) {
      const auto targets = pick_targets(pick, node_count);
      StarOptions options;
      options.star_steps_per_octave = config.star_steps_per_octave;
      if (config.max_hops > 0) options.max_hops = config.max_hops;
      try {
        select_star(network, targets[0], targets[1], targets[2], model, grid,
                    options, &stats);
      } catch (const NoRouteError&) {
        // a starless sample still counts its three routing runs
      }
    } else {
      const auto source = static_cast<int>(pick.uniform_index(node_count));
      RouteOptions options;
      if (config.max_hops > 0) options.max_hops = config.max_hops;
      stats = route_from_source(network, source, model, grid, options).stats;
    }
    const auto t1 = std::chrono::steady_clock::now();

    visited.add(static_cast<double>(stats.visited_paths));
    if (config.measure_time) {
      elapsed.add(std::chrono::duration<double>(t1 - t0).count());
    } else {
      elapsed.add(0.0);
    }
  }

  ScalingRow row;
  row.model = model;
  row.topology = topology;
  row.k_avg = k_avg;
  row.node_count = node_count;
  row.samples = config.samples;
  row.visited_mean = visited.mean();
  row.visited_var = visited.variance();
  row.time_mean = elapsed.mean();
  row.time_var = elapsed.variance();
  return row;
}

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string short_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::vector<ScalingRow> run_scaling(const BenchConfig& config) {
  config.validate();
  GridPtr grid =
      make_grid(config.grid_steps_per_octave, config.grid_depth_octaves);
  std::vector<ScalingRow> rows;
  std::size_t cell_index = 0;
  for (Topology topology : config.topologies) {
    for (Model model : config.models) {
      for (double k_avg : config.k_avg) {
        for (int node_count : config.node_counts) {
          try {
            rows.push_back(run_cell(config, grid, topology, model, k_avg,
                                    node_count, cell_index));
          } catch (const ConfigError& e) {
            throw ConfigError("cell " + to_string(topology) + "/" +
                              to_string(model) + "/k" + short_number(k_avg) +
                              "/V" + std::to_string(node_count) + ": " +
                              e.what());
          }
          ++cell_index;
        }
      }
    }
  }
  return rows;
}

PowerLawFit fit_power_law(const std::vector<std::array<double, 2>>& points) {
  if (points.size() < 3) {
    throw DomainError("power-law fit needs at least 3 points, got " +
                      std::to_string(points.size()));
  }
  std::vector<double> lx(points.size());
  std::vector<double> ly(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i][0] <= 0.0 || points[i][1] <= 0.0) {
      throw DomainError("power-law fit needs positive coordinates");
    }
    lx[i] = std::log(points[i][0]);
    ly[i] = std::log(points[i][1]);
  }
  const auto n = static_cast<double>(points.size());
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    xbar += lx[i];
    ybar += ly[i];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double stot = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sxx += (lx[i] - xbar) * (lx[i] - xbar);
    sxy += (lx[i] - xbar) * (ly[i] - ybar);
    stot += (ly[i] - ybar) * (ly[i] - ybar);
  }
  if (sxx == 0.0) {
    throw DomainError("power-law fit needs at least two distinct X values");
  }
  PowerLawFit fit;
  fit.alpha = sxy / sxx;
  fit.k = std::exp(ybar - fit.alpha * xbar);
  double sres = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double resid = ly[i] - (ybar + fit.alpha * (lx[i] - xbar));
    sres += resid * resid;
  }
  fit.r_squared = stot == 0.0 ? 1.0 : 1.0 - sres / stot;
  return fit;
}

std::vector<FitReport> scaling_fits(const std::vector<ScalingRow>& rows) {
  std::vector<std::tuple<Topology, Model, double>> groups;
  for (const ScalingRow& row : rows) {
    const auto group = std::make_tuple(row.topology, row.model, row.k_avg);
    bool known = false;
    for (const auto& g : groups) known = known || g == group;
    if (!known) groups.push_back(group);
  }

  std::vector<FitReport> fits;
  for (const auto& [topology, model, k_avg] : groups) {
    std::vector<std::array<double, 2>> visited;
    std::vector<std::array<double, 2>> timing;
    for (const ScalingRow& row : rows) {
      if (row.topology != topology || row.model != model ||
          row.k_avg != k_avg) {
        continue;
      }
      const auto x = static_cast<double>(row.node_count);
      if (row.visited_mean > 0.0) visited.push_back({x, row.visited_mean});
      if (row.time_mean > 0.0) timing.push_back({x, row.time_mean});
    }
    const std::string prefix = to_string(topology) + "/" + to_string(model) +
                               "/k" + short_number(k_avg) + "/";
    if (visited.size() >= 3) {
      fits.push_back({prefix + "visited_paths", fit_power_law(visited)});
    }
    if (timing.size() >= 3) {
      fits.push_back({prefix + "time", fit_power_law(timing)});
    }
  }
  return fits;
}

std::string rows_to_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "model,topology,k_avg,V,samples,visited_mean,visited_var,"
         "time_mean,time_var\n";
  for (const ScalingRow& row : rows) {
    out << to_string(row.model) << ',' << to_string(row.topology) << ','
        << format_number(row.k_avg) << ',' << row.node_count << ','
        << row.samples << ',' << format_number(row.visited_mean) << ','
        << format_number(row.visited_var) << ','
        << format_number(row.time_mean) << ','
        << format_number(row.time_var) << '\n';
  }
  return out.str();
}

std::vector<ScalingRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "model,topology,k_avg,V,samples,visited_mean,visited_var,"
              "time_mean,time_var") {
    throw ParseError("scaling CSV header mismatch");
  }
  std::vector<ScalingRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::array<std::string, 9> f;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!std::getline(fields, f[i], i + 1 < f.size() ? ',' : '\n')) {
        throw ParseError("scaling CSV row with missing fields: " + line);
      }
    }
    try {
      ScalingRow row;
      row.model = model_from_string(f[0]);
      row.topology = topology_from_string(f[1]);
      row.k_avg = std::stod(f[2]);
      row.node_count = std::stoi(f[3]);
      row.samples = std::stoi(f[4]);
      row.visited_mean = std::stod(f[5]);
      row.visited_var = std::stod(f[6]);
      row.time_mean = std::stod(f[7]);
      row.time_var = std::stod(f[8]);
      rows.push_back(row);
    } catch (const std::invalid_argument&) {
      throw ParseError("scaling CSV row with a malformed number: " + line);
    } catch (const std::out_of_range&) {
      throw ParseError("scaling CSV row with a malformed number: " + line);
    }
  }
  return rows;
}

std::string fits_to_json(const std::vector<FitReport>& fits) {
  nlohmann::json j = nlohmann::json::array();
  for (const FitReport& f : fits) {
    j.push_back({{"cell", f.cell},
                 {"k", f.fit.k},
                 {"alpha", f.fit.alpha},
                 {"r_squared", f.fit.r_squared}});
  }
  return j.dump(2) + "\n";
}

}  // namespace fidroute
