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

#include "fidroute/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fidroute/bench.hpp"
#include "fidroute/curves.hpp"
#include "fidroute/error.hpp"
#include "fidroute/multipartite.hpp"
#include "fidroute/network.hpp"
#include "fidroute/oracle.hpp"
#include "fidroute/rng.hpp"
#include "fidroute/routing.hpp"

namespace fidroute::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// One config-file key tied to a flag destination. The file value applies
// only when the flag was not given on the command line.
struct ConfigBinding {
  std::string key;
  CLI::Option* option = nullptr;
  std::function<void(const nlohmann::json&)> load;
  std::function<nlohmann::json()> save;
};

class CommandConfig {
 public:
  template <typename T>
  void bind(const std::string& key, CLI::Option* option, T& ref) {
    bindings_.push_back(
        {key, option,
         [&ref, key](const nlohmann::json& value) {
           try {
             ref = value.get<T>();
           } catch (const nlohmann::json::exception&) {
             throw ConfigError("config key \"" + key +
                               "\" has the wrong type");
           }
         },
         [&ref]() { return nlohmann::json(ref); }});
  }

  void apply_file(const std::string& path) const {
    std::string text = read_file(path);
    const bool blank =
        std::all_of(text.begin(), text.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; });
    if (blank) return;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) {
      throw ConfigError("config " + path + " must hold a JSON object");
    }
    std::string unknown;
    for (const auto& [key, value] : j.items()) {
      const bool known =
          std::any_of(bindings_.begin(), bindings_.end(),
                      [&key](const ConfigBinding& b) { return b.key == key; });
      if (!known) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) {
      throw ConfigError("config " + path + " has unknown keys: " + unknown);
    }
    for (const ConfigBinding& b : bindings_) {
      if (j.contains(b.key) && b.option->count() == 0) {
        b.load(j[b.key]);
      }
    }
  }

  /// Effective configuration after file and flag resolution.
  nlohmann::json echo() const {
    nlohmann::json j = nlohmann::json::object();
    for (const ConfigBinding& b : bindings_) j[b.key] = b.save();
    return j;
  }

 private:
  std::vector<ConfigBinding> bindings_;
};

struct GenParams {
  std::string config_path;
  std::string topology = "er";
  int nodes = 0;
  double avg_degree = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  CommandConfig config;
};

struct RouteParams {
  std::string config_path;
  std::string net;
  int source = -1;
  std::string model = "flow";
  int grid_m = 32;
  int grid_depth = 40;
  int max_hops = 0;
  std::vector<std::string> out;
  CommandConfig config;
};

struct StarParams {
  std::string config_path;
  std::string net;
  std::vector<int> targets;
  std::string model = "flow";
  int grid_m = 32;
  int grid_depth = 40;
  int star_m = 8;
  int max_hops = 0;
  std::vector<std::string> out;
  CommandConfig config;
};

struct VerifyParams {
  std::string config_path;
  int instances = 25;
  std::uint64_t seed = 0;
  int grid_m = 8;
  int grid_depth = 20;
  int max_hops = 5;
  std::string out;
  CommandConfig config;
};

struct BenchParams {
  std::string config_path;
  std::vector<std::string> topologies{"er"};
  std::vector<std::string> models{"flow"};
  std::vector<double> k_avg{6.0};
  std::vector<int> nodes{100, 200, 400};
  int samples = 20;
  std::uint64_t seed = 0;
  int grid_m = 8;
  int grid_depth = 20;
  bool multipartite = false;
  int star_m = 8;
  int max_hops = 0;
  bool timing = true;
  std::string out;
  std::string fits;
  CommandConfig config;
};

void run_gen(GenParams& p, std::ostream& out) {
  if (!p.config_path.empty()) p.config.apply_file(p.config_path);
  if (p.nodes < 2) throw ConfigError("gen needs --nodes of at least 2");
  if (p.avg_degree <= 0.0) {
    throw ConfigError("gen needs a positive --avg-degree");
  }
  if (p.out.empty()) throw ConfigError("gen needs --out");

  const Network network = generate_network(topology_from_string(p.topology),
                                           p.nodes, p.avg_degree, p.seed);
  nlohmann::json j = nlohmann::json::parse(network_to_json(network));
  j["config"] = p.config.echo();
  const std::string path = resolve_output_path(p.out);
  write_file(path, j.dump(2) + "\n");
  out << "wrote " << path << " (V=" << network.node_count()
      << ", links=" << network.links().size() << ")\n";
}

void write_route_outputs(const std::vector<std::string>& outs,
                         const CurveRegistry& registry,
                         const RoutingStats& stats,
                         const nlohmann::json& echo, std::ostream& out) {
  for (const std::string& given : outs) {
    const std::string path = resolve_output_path(given);
    if (ends_with(given, ".csv")) {
      write_file(path, registry_to_csv(registry));
    } else if (ends_with(given, ".json")) {
      nlohmann::json j = nlohmann::json::parse(registry_to_json(registry,
                                                                stats));
      j["config"] = echo;
      write_file(path, j.dump(2) + "\n");
    } else {
      throw ConfigError("cannot tell the format of \"" + given +
                        "\" (use a .csv or .json extension)");
    }
    out << "wrote " << path << "\n";
  }
}

void run_route(RouteParams& p, std::ostream& out) {
  if (!p.config_path.empty()) p.config.apply_file(p.config_path);
  if (p.net.empty()) throw ConfigError("route needs --net");
  if (p.source < 0) throw ConfigError("route needs a nonnegative --source");
  if (p.out.empty()) throw ConfigError("route needs at least one --out");

  const Network network = load_network(p.net);
  RouteOptions options;
  if (p.max_hops > 0) options.max_hops = p.max_hops;
  const RouteResult result =
      route_from_source(network, p.source, model_from_string(p.model),
                        make_grid(p.grid_m, p.grid_depth), options);
  out << "routed " << network.node_count() << " nodes from source "
      << p.source << ": " << result.registry.path_count() << " paths kept, "
      << result.stats.visited_paths << " visited\n";
  write_route_outputs(p.out, result.registry, result.stats, p.config.echo(),
                      out);
}

void run_star(StarParams& p, std::ostream& out) {
  if (!p.config_path.empty()) p.config.apply_file(p.config_path);
  if (p.net.empty()) throw ConfigError("star needs --net");
  if (p.targets.size() != 3) {
    throw ConfigError("star needs exactly three --targets");
  }
  if (p.out.empty()) throw ConfigError("star needs at least one --out");

  const Network network = load_network(p.net);
  StarOptions options;
  options.star_steps_per_octave = p.star_m;
  if (p.max_hops > 0) options.max_hops = p.max_hops;
  const StarResult result = select_star(
      network, p.targets[0], p.targets[1], p.targets[2],
      model_from_string(p.model), make_grid(p.grid_m, p.grid_depth), options);

  const auto feasible = std::count_if(
      result.points.begin(), result.points.end(),
      [](const StarPoint& point) { return point.source >= 0; });
  out << "star over " << network.node_count() << " candidate sources: "
      << feasible << " of " << result.points.size()
      << " grid points feasible\n";
  for (const std::string& given : p.out) {
    const std::string path = resolve_output_path(given);
    if (ends_with(given, ".csv")) {
      write_file(path, star_to_csv(result));
    } else if (ends_with(given, ".json")) {
      nlohmann::json j = nlohmann::json::parse(star_to_json(result));
      j["config"] = p.config.echo();
      write_file(path, j.dump(2) + "\n");
    } else {
      throw ConfigError("cannot tell the format of \"" + given +
                        "\" (use a .csv or .json extension)");
    }
    out << "wrote " << path << "\n";
  }
}

void run_bench(BenchParams& p, std::ostream& out) {
  if (!p.config_path.empty()) p.config.apply_file(p.config_path);
  if (p.out.empty()) throw ConfigError("bench needs --out");

  BenchConfig config;
  config.topologies.clear();
  for (const std::string& t : p.topologies) {
    config.topologies.push_back(topology_from_string(t));
  }
  config.models.clear();
  for (const std::string& m : p.models) {
    config.models.push_back(model_from_string(m));
  }
  config.k_avg = p.k_avg;
  config.node_counts = p.nodes;
  config.samples = p.samples;
  config.seed = p.seed;
  config.grid_steps_per_octave = p.grid_m;
  config.grid_depth_octaves = p.grid_depth;
  config.multipartite = p.multipartite;
  config.star_steps_per_octave = p.star_m;
  config.max_hops = p.max_hops;
  config.measure_time = p.timing;

  const std::vector<ScalingRow> rows = run_scaling(config);
  const std::string rows_path = resolve_output_path(p.out);
  write_file(rows_path, rows_to_csv(rows));
  out << "wrote " << rows_path << " (" << rows.size() << " rows)\n";

  if (!p.fits.empty()) {
    const std::vector<FitReport> fits = scaling_fits(rows);
    nlohmann::json j;
    j["config"] = p.config.echo();
    j["fits"] = nlohmann::json::parse(fits_to_json(fits));
    const std::string fits_path = resolve_output_path(p.fits);
    write_file(fits_path, j.dump(2) + "\n");
    out << "wrote " << fits_path << " (" << fits.size() << " fits)\n";
  }
}

// TAP-style oracle runs; returns the failure count.
class VerifyReport {
 public:
  explicit VerifyReport(std::ostream& out) : out_(out) {}

  void plan(int checks) { out_ << "1.." << checks << "\n"; }

  void check(bool ok, const std::string& description) {
    ++index_;
    if (!ok) ++failures_;
    out_ << (ok ? "ok " : "not ok ") << index_ << " - " << description
         << "\n";
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int index_ = 0;
  int failures_ = 0;
};

double max_envelope_gap(const CurveRegistry& registry,
                        const std::vector<FidelityCurve>& reference) {
  double gap = 0.0;
  for (int node = 0; node < registry.node_count(); ++node) {
    const EnvelopeEntry& envelope = registry.envelope(node);
    for (std::size_t k = 0; k < reference[node].size(); ++k) {
      gap = std::max(gap,
                     std::abs(envelope.gamma(k) - reference[node].value(k)));
    }
  }
  return gap;
}

std::vector<FidelityCurve> random_path_links(Rng& rng, int hops,
                                             GridPtr grid) {
  std::vector<FidelityCurve> links;
  links.reserve(hops);
  for (int i = 0; i < hops; ++i) {
    links.push_back(build_link_curve(sample_link_params(rng), grid).curve);
  }
  return links;
}

void run_verify(VerifyParams& p, std::ostream& out) {
  if (!p.config_path.empty()) p.config.apply_file(p.config_path);
  if (p.instances < 1) throw ConfigError("verify needs --instances >= 1");
  GridPtr grid = make_grid(p.grid_m, p.grid_depth);
  oracle::OracleConfig oracle_config;
  oracle_config.max_hops = p.max_hops;
  oracle_config.grid = grid;

  std::ostringstream tap;
  VerifyReport report(tap);
  report.plan(4 * p.instances);

  // engine envelopes against exhaustive path enumeration
  for (int i = 0; i < p.instances; ++i) {
    const Topology topology = i % 2 == 0 ? Topology::er : Topology::rgg;
    const Model model = i / 2 % 2 == 0 ? Model::flow : Model::single;
    const std::uint64_t net_seed = derive_seed(p.seed, 1, i);
    const Network network = generate_network(topology, 8, 4.0, net_seed);
    Rng pick(derive_seed(p.seed, 101, i));
    const auto source = static_cast<int>(pick.uniform_index(8));

    RouteOptions options;
    options.max_hops = p.max_hops;
    const RouteResult result =
        route_from_source(network, source, model, grid, options);
    const auto reference =
        oracle::brute_force_envelope(network, source, model, oracle_config);
    const double gap = max_envelope_gap(result.registry, reference);
    report.check(gap <= 1e-12,
                 "envelope " + to_string(topology) + "/" + to_string(model) +
                     " net_seed=" + std::to_string(net_seed) + " source=" +
                     std::to_string(source));
  }

  // sequential concatenation against the joint capacity-split optimum
  for (int i = 0; i < p.instances; ++i) {
    const int hops = 2 + i % 3;
    const std::uint64_t links_seed = derive_seed(p.seed, 2, i);
    Rng rng(links_seed);
    const auto links = random_path_links(rng, hops, grid);

    FidelityCurve forward = links[0];
    for (int h = 1; h < hops; ++h) forward = concat_single(forward, links[h]);
    FidelityCurve backward = links[hops - 1];
    for (int h = hops - 2; h >= 0; --h) {
      backward = concat_single(links[h], backward);
    }
    double gap = 0.0;
    for (std::size_t k = 0; k < grid->size(); ++k) {
      gap = std::max(gap, std::abs(forward.value(k) -
                                   oracle::joint_single_gamma_at(links, k)));
      gap = std::max(gap, std::abs(forward.value(k) - backward.value(k)));
    }
    report.check(gap <= 1e-12, "joint-gamma hops=" + std::to_string(hops) +
                                   " seed=" + std::to_string(links_seed));
  }

  // uniform rate optimality along flow paths
  for (int i = 0; i < p.instances; ++i) {
    const std::uint64_t links_seed = derive_seed(p.seed, 3, i);
    Rng rng(links_seed);
    const auto links = random_path_links(rng, 3, grid);
    report.check(oracle::uniform_flow_check(links),
                 "uniform-flow seed=" + std::to_string(links_seed));
  }

  // star selection against exhaustive source and split enumeration
  for (int i = 0; i < p.instances; ++i) {
    const Model model = i % 2 == 0 ? Model::flow : Model::single;
    const std::uint64_t net_seed = derive_seed(p.seed, 4, i);
    const Network network = generate_network(Topology::er, 6, 4.0, net_seed);
    Rng pick(derive_seed(p.seed, 104, i));
    std::array<int, 3> targets{};
    targets[0] = static_cast<int>(pick.uniform_index(6));
    do {
      targets[1] = static_cast<int>(pick.uniform_index(6));
    } while (targets[1] == targets[0]);
    do {
      targets[2] = static_cast<int>(pick.uniform_index(6));
    } while (targets[2] == targets[0] || targets[2] == targets[1]);

    StarOptions options;
    options.star_steps_per_octave = p.grid_m;
    options.max_hops = p.max_hops;
    std::vector<double> engine(grid->size(), 0.0);
    try {
      const StarResult star =
          select_star(network, targets[0], targets[1], targets[2], model,
                      grid, options);
      for (std::size_t k = 0; k < engine.size(); ++k) {
        engine[k] = star.points[k].fidelity;
      }
    } catch (const NoRouteError&) {
      // engine found no star; the oracle curve must be all zero then
    }
    const auto reference = oracle::brute_force_star(
        network, targets[0], targets[1], targets[2], model, oracle_config);
    double gap = 0.0;
    for (std::size_t k = 0; k < engine.size(); ++k) {
      gap = std::max(gap, std::abs(engine[k] - reference[k]));
    }
    report.check(gap <= 1e-12,
                 "star " + std::string(to_string(model)) + " net_seed=" +
                     std::to_string(net_seed) + " targets=" +
                     std::to_string(targets[0]) + "," +
                     std::to_string(targets[1]) + "," +
                     std::to_string(targets[2]));
  }

  out << tap.str();
  if (!p.out.empty()) {
    write_file(resolve_output_path(p.out), tap.str());
  }
  if (report.failures() > 0) {
    throw ValidationError(std::to_string(report.failures()) + " of " +
                          std::to_string(4 * p.instances) +
                          " oracle checks failed");
  }
}

}  // namespace

std::string resolve_output_path(const std::string& path) {
  const char* dir = std::getenv("FIDROUTE_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Entanglement routing over fidelity curves"};
  app.set_version_flag("--version", "fidroute 0.1.0");
  app.require_subcommand(1);

  GenParams gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a random network file");
  gen_cmd->add_option("--config", gen.config_path,
                      "JSON config file; flags override its values");
  gen.config.bind("topology",
                  gen_cmd->add_option("--topology", gen.topology,
                                      "Graph family: er or rgg"),
                  gen.topology);
  gen.config.bind("nodes",
                  gen_cmd->add_option("--nodes", gen.nodes,
                                      "Number of nodes (at least 2)"),
                  gen.nodes);
  gen.config.bind("avg_degree",
                  gen_cmd->add_option("--avg-degree", gen.avg_degree,
                                      "Target average degree"),
                  gen.avg_degree);
  gen.config.bind("seed",
                  gen_cmd->add_option("--seed", gen.seed, "RNG seed"),
                  gen.seed);
  gen.config.bind("out",
                  gen_cmd->add_option("--out", gen.out,
                                      "Output network JSON path"),
                  gen.out);

  RouteParams route;
  CLI::App* route_cmd = app.add_subcommand(
      "route", "Compute per-node fidelity curve envelopes from one source");
  route_cmd->add_option("--config", route.config_path,
                        "JSON config file; flags override its values");
  route.config.bind("net",
                    route_cmd->add_option("--net", route.net,
                                          "Network JSON file"),
                    route.net);
  route.config.bind("source",
                    route_cmd->add_option("--source", route.source,
                                          "Source node id"),
                    route.source);
  route.config.bind("model",
                    route_cmd->add_option("--model", route.model,
                                          "Distribution model: flow or "
                                          "single"),
                    route.model);
  route.config.bind("grid_m",
                    route_cmd->add_option("--grid-m", route.grid_m,
                                          "Capacity grid steps per octave"),
                    route.grid_m);
  route.config.bind("grid_depth",
                    route_cmd->add_option("--grid-depth", route.grid_depth,
                                          "Capacity grid depth in octaves"),
                    route.grid_depth);
  route.config.bind("max_hops",
                    route_cmd->add_option("--max-hops", route.max_hops,
                                          "Hop bound, 0 for unbounded"),
                    route.max_hops);
  route.config.bind("out",
                    route_cmd->add_option("--out", route.out,
                                          "Output path(s), .csv or .json"),
                    route.out);

  StarParams star;
  CLI::App* star_cmd = app.add_subcommand(
      "star", "Select the best GHZ star for three target nodes");
  star_cmd->add_option("--config", star.config_path,
                       "JSON config file; flags override its values");
  star.config.bind("net",
                   star_cmd->add_option("--net", star.net,
                                        "Network JSON file"),
                   star.net);
  star.config.bind("targets",
                   star_cmd->add_option("--targets", star.targets,
                                        "Three comma-separated target ids")
                       ->delimiter(',')
                       ->expected(3),
                   star.targets);
  star.config.bind("model",
                   star_cmd->add_option("--model", star.model,
                                        "Distribution model: flow or single"),
                   star.model);
  star.config.bind("grid_m",
                   star_cmd->add_option("--grid-m", star.grid_m,
                                        "Capacity grid steps per octave"),
                   star.grid_m);
  star.config.bind("grid_depth",
                   star_cmd->add_option("--grid-depth", star.grid_depth,
                                        "Capacity grid depth in octaves"),
                   star.grid_depth);
  star.config.bind("star_m",
                   star_cmd->add_option("--star-m", star.star_m,
                                        "Single-model search grid steps per "
                                        "octave; must divide --grid-m"),
                   star.star_m);
  star.config.bind("max_hops",
                   star_cmd->add_option("--max-hops", star.max_hops,
                                        "Hop bound, 0 for unbounded"),
                   star.max_hops);
  star.config.bind("out",
                   star_cmd->add_option("--out", star.out,
                                        "Output path(s), .csv or .json"),
                   star.out);

  VerifyParams verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the brute-force oracle suites on small instances");
  verify_cmd->add_option("--config", verify.config_path,
                         "JSON config file; flags override its values");
  verify.config.bind("instances",
                     verify_cmd->add_option("--instances", verify.instances,
                                            "Instances per oracle suite"),
                     verify.instances);
  verify.config.bind("seed",
                     verify_cmd->add_option("--seed", verify.seed,
                                            "RNG seed"),
                     verify.seed);
  verify.config.bind("grid_m",
                     verify_cmd->add_option("--grid-m", verify.grid_m,
                                            "Capacity grid steps per octave"),
                     verify.grid_m);
  verify.config.bind(
      "grid_depth",
      verify_cmd->add_option("--grid-depth", verify.grid_depth,
                             "Capacity grid depth in octaves"),
      verify.grid_depth);
  verify.config.bind("max_hops",
                     verify_cmd->add_option("--max-hops", verify.max_hops,
                                            "Hop bound for engine and "
                                            "oracle, 1 to 7"),
                     verify.max_hops);
  verify.config.bind("out",
                     verify_cmd->add_option("--out", verify.out,
                                            "Optional TAP report copy"),
                     verify.out);

  BenchParams bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Measure visited-path and runtime scaling with power-law "
               "fits");
  bench_cmd->add_option("--config", bench.config_path,
                        "JSON config file; flags override its values");
  bench.config.bind("topologies",
                    bench_cmd->add_option("--topologies", bench.topologies,
                                          "Comma-separated graph families")
                        ->delimiter(','),
                    bench.topologies);
  bench.config.bind("models",
                    bench_cmd->add_option("--models", bench.models,
                                          "Comma-separated models")
                        ->delimiter(','),
                    bench.models);
  bench.config.bind("k_avg",
                    bench_cmd->add_option("--k-avg", bench.k_avg,
                                          "Comma-separated average degrees")
                        ->delimiter(','),
                    bench.k_avg);
  bench.config.bind("nodes",
                    bench_cmd->add_option("--nodes", bench.nodes,
                                          "Comma-separated node counts")
                        ->delimiter(','),
                    bench.nodes);
  bench.config.bind("samples",
                    bench_cmd->add_option("--samples", bench.samples,
                                          "Networks per cell"),
                    bench.samples);
  bench.config.bind("seed",
                    bench_cmd->add_option("--seed", bench.seed, "RNG seed"),
                    bench.seed);
  bench.config.bind("grid_m",
                    bench_cmd->add_option("--grid-m", bench.grid_m,
                                          "Capacity grid steps per octave"),
                    bench.grid_m);
  bench.config.bind("grid_depth",
                    bench_cmd->add_option("--grid-depth", bench.grid_depth,
                                          "Capacity grid depth in octaves"),
                    bench.grid_depth);
  bench.config.bind("multipartite",
                    bench_cmd->add_flag("--multipartite", bench.multipartite,
                                        "Benchmark three-target star "
                                        "selection instead of routing"),
                    bench.multipartite);
  bench.config.bind("star_m",
                    bench_cmd->add_option("--star-m", bench.star_m,
                                          "Star search grid steps per "
                                          "octave"),
                    bench.star_m);
  bench.config.bind("max_hops",
                    bench_cmd->add_option("--max-hops", bench.max_hops,
                                          "Hop bound per path, 0 for "
                                          "unbounded"),
                    bench.max_hops);
  bench.config.bind("timing",
                    bench_cmd->add_flag("--timing,!--no-timing", bench.timing,
                                        "Record wall time (disable for "
                                        "byte-reproducible output)"),
                    bench.timing);
  bench.config.bind("out",
                    bench_cmd->add_option("--out", bench.out,
                                          "Output scaling CSV path"),
                    bench.out);
  bench.config.bind("fits",
                    bench_cmd->add_option("--fits", bench.fits,
                                          "Optional power-law fit JSON path"),
                    bench.fits);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (gen_cmd->parsed()) run_gen(gen, out);
    if (route_cmd->parsed()) run_route(route, out);
    if (star_cmd->parsed()) run_star(star, out);
    if (verify_cmd->parsed()) run_verify(verify, out);
    if (bench_cmd->parsed()) run_bench(bench, out);
    return 0;
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int dispatch(int argc, const char* const* argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace fidroute::cli
