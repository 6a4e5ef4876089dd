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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fidroute/error.hpp"
#include "fidroute/network.hpp"
#include "fidroute/oracle.hpp"
#include "fidroute/routing.hpp"

using namespace fidroute;

namespace {

const LinkParams kClean{0.35, 0.0, 0.0, 1.0};
const LinkParams kCleanGood{0.39, 0.0, 0.0, 1.0};
const LinkParams kCleanPoor{0.31, 0.0, 0.0, 1.0};
const LinkParams kDark{0.35, 1e-3, 1e-3, 1.0};

// Recomputes a path curve by folding its link curves in path order. This is
// exactly the engine's extension order, so values must match bit for bit.
FidelityCurve fold_path(const CurveRegistry& reg, const std::vector<int>& nodes) {
  const LinkCurveSet& links = reg.link_curves();
  REQUIRE(nodes.size() >= 2);
  FidelityCurve acc =
      links.curves[links.index_of(nodes[0], nodes[1])].curve;
  for (std::size_t t = 2; t < nodes.size(); ++t) {
    const FidelityCurve& next =
        links.curves[links.index_of(nodes[t - 1], nodes[t])].curve;
    acc = concat(acc, next, reg.model());
  }
  return acc;
}

}  // namespace

TEST_CASE("a single link routes with its own curve") {
  auto grid = make_grid(8, 20);
  const Network net(2, {{0, 1, kDark}});
  for (Model model : {Model::flow, Model::single}) {
    const RouteResult res = route_from_source(net, 0, model, grid);
    CHECK(res.stats.visited_paths == 2);  // empty path and the one-hop path

    const LinkCurve link = build_link_curve(kDark, grid);
    const EnvelopeEntry& env = res.registry.envelope(1);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      CHECK(env.gamma(k) == link.curve.value(k));
    }

    // the source holds the unit curve attributed to the empty path
    const EnvelopeEntry& self = res.registry.envelope(0);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      CHECK(self.gamma(k) == 1.0);
      CHECK(self.path_id(k) == 0);
    }
    CHECK(res.registry.path_nodes(0) == std::vector<int>{0});
  }
}

TEST_CASE("a dominating direct link claims the whole envelope") {
  auto grid = make_grid(8, 20);
  // triangle with a strictly better direct link 0-2
  const Network net(3, {{0, 1, kCleanPoor}, {1, 2, kCleanPoor},
                        {0, 2, kCleanGood}});
  for (Model model : {Model::flow, Model::single}) {
    CAPTURE(to_string(model));
    const RouteResult res = route_from_source(net, 0, model, grid);
    const EnvelopeEntry& env = res.registry.envelope(2);
    const LinkCurve direct = build_link_curve(kCleanGood, grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      CHECK(env.gamma(k) == direct.curve.value(k));
      if (env.gamma(k) > 0.0) {
        CHECK(res.registry.path_nodes(env.path_id(k)) ==
              std::vector<int>({0, 2}));
      }
    }
  }
}

TEST_CASE("engine envelopes match the exhaustive oracle") {
  auto grid = make_grid(8, 20);
  oracle::OracleConfig cfg;
  cfg.grid = grid;
  cfg.max_hops = 5;
  RouteOptions opts;
  opts.max_hops = 5;

  for (int inst = 0; inst < 6; ++inst) {
    const Topology topo = inst % 2 == 0 ? Topology::er : Topology::rgg;
    const Model model = (inst / 2) % 2 == 0 ? Model::flow : Model::single;
    const Network net = generate_network(topo, 8, 4.0, 1000 + inst);
    const int source = inst % net.node_count();
    CAPTURE(inst);

    const RouteResult res = route_from_source(net, source, model, grid, opts);
    const auto truth = oracle::brute_force_envelope(net, source, model, cfg);
    for (int node = 0; node < net.node_count(); ++node) {
      const EnvelopeEntry& env = res.registry.envelope(node);
      for (std::size_t k = 0; k < grid->size(); ++k) {
        CHECK(std::abs(env.gamma(k) - truth[node].value(k)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dominance pruning changes work but not results") {
  auto grid = make_grid(8, 20);
  const Network net = generate_er(10, 4.0, 77);
  for (Model model : {Model::flow, Model::single}) {
    RouteOptions pruned;
    pruned.max_hops = 4;
    RouteOptions full = pruned;
    full.prune = false;
    const RouteResult a = route_from_source(net, 0, model, grid, pruned);
    const RouteResult b = route_from_source(net, 0, model, grid, full);
    CHECK(b.stats.visited_paths >= a.stats.visited_paths);
    for (int node = 0; node < net.node_count(); ++node) {
      for (std::size_t k = 0; k < grid->size(); ++k) {
        CHECK(a.registry.envelope(node).gamma(k) ==
              b.registry.envelope(node).gamma(k));
      }
    }
  }
}

TEST_CASE("every attribution is a simple path whose curve reproduces it") {
  auto grid = make_grid(8, 20);
  const Network net = generate_er(9, 4.0, 31);
  for (Model model : {Model::flow, Model::single}) {
    const RouteResult res = route_from_source(net, 2, model, grid);
    const CurveRegistry& reg = res.registry;
    for (int node = 0; node < net.node_count(); ++node) {
      const EnvelopeEntry& env = reg.envelope(node);
      for (std::size_t k = 0; k < grid->size(); ++k) {
        if (env.path_id(k) < 0) {
          CHECK(env.gamma(k) == 0.0);
          continue;
        }
        const std::vector<int>& nodes = reg.path_nodes(env.path_id(k));
        REQUIRE_FALSE(nodes.empty());
        CHECK(nodes.front() == 2);
        CHECK(nodes.back() == node);
        // no repeated node
        std::vector<int> sorted(nodes);
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) ==
              sorted.end());
        if (nodes.size() >= 2) {
          const FidelityCurve curve = fold_path(reg, nodes);
          CHECK(curve.value(k) == env.gamma(k));
        }
      }
    }
  }
}

TEST_CASE("hop limits restrict the search radius") {
  auto grid = make_grid(8, 20);
  // path graph 0-1-2-3
  const Network net(4, {{0, 1, kClean}, {1, 2, kClean}, {2, 3, kClean}});
  RouteOptions opts;
  opts.max_hops = 1;
  const RouteResult res = route_from_source(net, 0, Model::flow, grid, opts);
  CHECK_FALSE(res.registry.envelope(1).as_curve().is_zero());
  CHECK(res.registry.envelope(2).as_curve().is_zero());
  CHECK(res.registry.envelope(3).as_curve().is_zero());

  RouteOptions two;
  two.max_hops = 2;
  const RouteResult res2 = route_from_source(net, 0, Model::flow, grid, two);
  CHECK_FALSE(res2.registry.envelope(2).as_curve().is_zero());
  CHECK(res2.registry.envelope(3).as_curve().is_zero());
}

TEST_CASE("visited paths cover at least the reachable nodes") {
  auto grid = make_grid(8, 20);
  const Network net = generate_er(12, 3.0, 55);
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  std::uint64_t reachable = 0;
  for (int node = 0; node < net.node_count(); ++node) {
    if (node == 0 || !res.registry.envelope(node).as_curve().is_zero()) {
      ++reachable;
    }
  }
  CHECK(res.stats.visited_paths >= reachable);
  CHECK(res.stats.elapsed_seconds >= 0.0);
}

TEST_CASE("routing is deterministic") {
  auto grid = make_grid(8, 20);
  const Network net = generate_rgg(14, 4.0, 21);
  for (Model model : {Model::flow, Model::single}) {
    const RouteResult a = route_from_source(net, 1, model, grid);
    const RouteResult b = route_from_source(net, 1, model, grid);
    CHECK(a.stats.visited_paths == b.stats.visited_paths);
    CHECK(registry_to_json(a.registry, a.stats) ==
          registry_to_json(b.registry, b.stats));
  }
}

TEST_CASE("path extraction at the source is the empty path") {
  auto grid = make_grid(8, 20);
  const Network net(2, {{0, 1, kClean}});
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  const PathExtraction ext = extract_path(res.registry, 0, 0.3);
  CHECK(ext.nodes == std::vector<int>{0});
  CHECK(ext.gamma == 1.0);
  CHECK(ext.capacity == grid->capacity(6));  // snapped at or below 0.3
  CHECK(ext.link_capacities.empty());
}

TEST_CASE("flow extraction runs every link at the snapped rate") {
  auto grid = make_grid(8, 20);
  const Network net(4, {{0, 1, kClean}, {1, 2, kClean}, {2, 3, kClean}});
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  const PathExtraction ext = extract_path(res.registry, 3, 0.0625);
  CHECK(ext.nodes == std::vector<int>({0, 1, 2, 3}));
  CHECK(ext.capacity == doctest::Approx(0.0625).epsilon(1e-15));
  REQUIRE(ext.link_capacities.size() == 3);
  for (double c : ext.link_capacities) {
    CHECK(c == ext.capacity);
  }
  // the reported value matches the envelope at the snapped point
  const auto idx = grid->index_at_or_below(0.0625);
  REQUIRE(idx.has_value());
  CHECK(ext.gamma == res.registry.envelope(3).gamma(*idx));
}

TEST_CASE("dark-count plateaus report the plateau capacity") {
  auto grid = make_grid(8, 20);
  const Network net(3, {{0, 1, kDark}, {1, 2, kDark}});
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  // query far below the plateau edge near c = 0.017
  const PathExtraction ext = extract_path(res.registry, 2, 1e-3);
  REQUIRE(ext.link_capacities.size() == 2);
  for (double c : ext.link_capacities) {
    CHECK(c == doctest::Approx(0.01703918332289465).epsilon(1e-14));
  }
  CHECK(ext.capacity < 0.0011);
}

TEST_CASE("single extraction splits the capacity across the links") {
  auto grid = make_grid(8, 20);
  const Network net(3, {{0, 1, kCleanGood}, {1, 2, kCleanPoor}});
  const RouteResult res = route_from_source(net, 0, Model::single, grid);
  const LinkCurve l1 = build_link_curve(kCleanGood, grid);
  const LinkCurve l2 = build_link_curve(kCleanPoor, grid);

  for (double c : {0.01, 1e-3, 1e-4}) {
    CAPTURE(c);
    const PathExtraction ext = extract_path(res.registry, 2, c);
    CHECK(ext.nodes == std::vector<int>({0, 1, 2}));
    REQUIRE(ext.link_capacities.size() == 2);
    // clean links operate exactly where the split says; the product of the
    // operating capacities composes back to the queried grid point
    const double prod = ext.link_capacities[0] * ext.link_capacities[1];
    CHECK(std::abs(prod - ext.capacity) <= 1e-12 * ext.capacity);

    // the reported gamma is the best split product
    const auto k = grid->index_at_or_below(c);
    REQUIRE(k.has_value());
    double best = 0.0;
    const std::size_t m = 8;
    for (std::size_t i = 0; i + m <= *k; ++i) {
      const std::size_t j = *k - m - i;
      if (j >= grid->size()) continue;
      best = std::max(best, l1.curve.value(i) * l2.curve.value(j));
    }
    CHECK(ext.gamma == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("extraction failures raise NoRouteError") {
  auto grid = make_grid(8, 20);
  const Network net(3, {{0, 1, kClean}});
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  // node 2 is disconnected
  CHECK_THROWS_AS(extract_path(res.registry, 2, 0.01), NoRouteError);
  // below the grid floor nothing can be snapped
  CHECK_THROWS_AS(extract_path(res.registry, 1, 1e-12), NoRouteError);
  // at the 1/2 cap the fidelity is zero
  CHECK_THROWS_AS(extract_path(res.registry, 1, 0.5), NoRouteError);
  CHECK_THROWS_AS(extract_path(res.registry, 5, 0.01), DomainError);
}

TEST_CASE("registry JSON carries the envelopes and no wall-clock noise") {
  auto grid = make_grid(4, 6);
  const Network net = generate_er(5, 2.5, 13);
  const RouteResult res = route_from_source(net, 0, Model::single, grid);
  const std::string text = registry_to_json(res.registry, res.stats);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("V").get<int>() == 5);
  CHECK(j.at("source").get<int>() == 0);
  CHECK(j.at("model").get<std::string>() == "single");
  CHECK(j.at("grid").at("m").get<int>() == 4);
  CHECK(j.at("grid").at("depth").get<int>() == 6);
  CHECK(j.at("visited_paths").get<std::uint64_t>() ==
        res.stats.visited_paths);
  CHECK(j.at("nodes").size() == 5);
  CHECK(j.at("nodes")[0].at("gamma").size() == grid->size());
  CHECK_FALSE(j.contains("elapsed"));
  CHECK_FALSE(j.contains("elapsed_seconds"));
  // every referenced path id resolves
  for (const auto& node : j.at("nodes")) {
    for (const auto& pid : node.at("path_ids")) {
      const int id = pid.get<int>();
      if (id >= 0) {
        CHECK(j.at("paths").contains(std::to_string(id)));
      }
    }
  }
}

TEST_CASE("registry CSV lists fidelity rows per node and capacity") {
  auto grid = make_grid(4, 6);
  const Network net(2, {{0, 1, kDark}});
  const RouteResult res = route_from_source(net, 0, Model::flow, grid);
  const std::string text = registry_to_csv(res.registry);
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "node,capacity,gamma,fidelity");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string node_s, cap_s, gamma_s, fid_s;
    REQUIRE(std::getline(fields, node_s, ','));
    REQUIRE(std::getline(fields, cap_s, ','));
    REQUIRE(std::getline(fields, gamma_s, ','));
    REQUIRE(std::getline(fields, fid_s, ','));
    const double gamma = std::stod(gamma_s);
    const double fid = std::stod(fid_s);
    CHECK(std::abs(fid - (3.0 * gamma + 1.0) / 4.0) <= 1e-12);
  }
  CHECK(rows == 2 * grid->size());
}

TEST_CASE("routing validates its inputs") {
  auto grid = make_grid(8, 20);
  const Network net(2, {{0, 1, kClean}});
  CHECK_THROWS_AS(route_from_source(net, 5, Model::flow, grid), DomainError);
  CHECK_THROWS_AS(route_from_source(net, -1, Model::flow, grid), DomainError);
  RouteOptions bad;
  bad.max_hops = 0;
  CHECK_THROWS_AS(route_from_source(net, 0, Model::flow, grid, bad),
                  ConfigError);
}
