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

#include "fidroute/network.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fidroute/error.hpp"

namespace fidroute {

Network::Network(int node_count, std::vector<Link> links,
                 std::optional<std::vector<std::array<double, 2>>> coordinates)
    : node_count_(node_count),
      links_(std::move(links)),
      coordinates_(std::move(coordinates)) {
  if (node_count_ < 1) {
    throw ValidationError("network needs at least one node");
  }
  if (coordinates_ &&
      coordinates_->size() != static_cast<std::size_t>(node_count_)) {
    throw ValidationError("coordinate count does not match node count");
  }
  std::set<std::pair<int, int>> seen;
  adjacency_.resize(node_count_);
  for (std::size_t idx = 0; idx < links_.size(); ++idx) {
    const Link& l = links_[idx];
    if (l.u < 0 || l.u >= node_count_ || l.v < 0 || l.v >= node_count_) {
      throw ValidationError("link (" + std::to_string(l.u) + "," +
                            std::to_string(l.v) + ") has a node id outside [0," +
                            std::to_string(node_count_) + ")");
    }
    if (l.u == l.v) {
      throw ValidationError("self-loop at node " + std::to_string(l.u));
    }
    const auto key = std::minmax(l.u, l.v);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate link (" + std::to_string(key.first) +
                            "," + std::to_string(key.second) + ")");
    }
    try {
      l.params.validate();
    } catch (const DomainError& e) {
      throw ValidationError("link (" + std::to_string(l.u) + "," +
                            std::to_string(l.v) + "): " + e.what());
    }
    adjacency_[l.u].emplace_back(l.v, static_cast<int>(idx));
    adjacency_[l.v].emplace_back(l.u, static_cast<int>(idx));
  }
}

LinkParams sample_link_params(Rng& rng) {
  LinkParams p;
  p.epsilon = rng.uniform(0.3, 0.4);
  p.p_dark = rng.uniform(0.0, 1e-3);
  p.beta = rng.uniform(0.0, 1e-3);
  p.n_e = 1.0;
  return p;
}

LinkParams sample_link_params(std::uint64_t seed) {
  Rng rng(seed);
  return sample_link_params(rng);
}

Network generate_er(int node_count, double avg_degree, std::uint64_t seed) {
  if (node_count < 2) {
    throw ConfigError("ER generator needs at least 2 nodes");
  }
  if (!(avg_degree > 0.0)) {
    throw ConfigError("avg_degree must be positive, got " +
                      std::to_string(avg_degree));
  }
  const auto max_links =
      static_cast<long long>(node_count) * (node_count - 1) / 2;
  const auto link_count = std::llround(avg_degree * node_count / 2.0);
  if (link_count > max_links) {
    throw ConfigError("avg_degree " + std::to_string(avg_degree) +
                      " asks for " + std::to_string(link_count) +
                      " links but only " + std::to_string(max_links) +
                      " are possible");
  }
  Rng rng(seed);
  std::set<std::pair<int, int>> seen;
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(link_count));
  while (static_cast<long long>(links.size()) < link_count) {
    const int u = static_cast<int>(rng.uniform_index(node_count));
    const int v = static_cast<int>(rng.uniform_index(node_count));
    if (u == v) continue;
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) continue;
    links.push_back({key.first, key.second, LinkParams{}});
  }
  for (Link& l : links) l.params = sample_link_params(rng);
  return Network(node_count, std::move(links));
}

Network generate_rgg(int node_count, double avg_degree, std::uint64_t seed) {
  if (node_count < 2) {
    throw ConfigError("RGG generator needs at least 2 nodes");
  }
  if (!(avg_degree > 0.0)) {
    throw ConfigError("avg_degree must be positive, got " +
                      std::to_string(avg_degree));
  }
  const double radius =
      std::sqrt(avg_degree / (node_count * std::numbers::pi));
  if (radius >= 1.0) {
    throw ConfigError("neighborhood radius " + std::to_string(radius) +
                      " reaches across the whole unit square");
  }
  Rng rng(seed);
  std::vector<std::array<double, 2>> coords(node_count);
  for (auto& c : coords) {
    c[0] = rng.uniform(0.0, 1.0);
    c[1] = rng.uniform(0.0, 1.0);
  }
  const double r2 = radius * radius;
  std::vector<Link> links;
  for (int u = 0; u < node_count; ++u) {
    for (int v = u + 1; v < node_count; ++v) {
      const double dx = coords[u][0] - coords[v][0];
      const double dy = coords[u][1] - coords[v][1];
      if (dx * dx + dy * dy < r2) {
        links.push_back({u, v, LinkParams{}});
      }
    }
  }
  for (Link& l : links) l.params = sample_link_params(rng);
  return Network(node_count, std::move(links), std::move(coords));
}

std::string to_string(Topology topology) {
  return topology == Topology::er ? "er" : "rgg";
}

Topology topology_from_string(const std::string& name) {
  if (name == "er") return Topology::er;
  if (name == "rgg") return Topology::rgg;
  throw ConfigError("unknown topology \"" + name + "\" (expected er or rgg)");
}

Network generate_network(Topology topology, int node_count, double avg_degree,
                         std::uint64_t seed) {
  return topology == Topology::er
             ? generate_er(node_count, avg_degree, seed)
             : generate_rgg(node_count, avg_degree, seed);
}

std::string network_to_json(const Network& network) {
  nlohmann::json j;
  j["V"] = network.node_count();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Link& l : network.links()) {
    edges.push_back({{"u", l.u},
                     {"v", l.v},
                     {"eps", l.params.epsilon},
                     {"p_dark", l.params.p_dark},
                     {"beta", l.params.beta},
                     {"n_e", l.params.n_e}});
  }
  if (network.coordinates()) {
    auto& coords = j["coords"] = nlohmann::json::array();
    for (const auto& c : *network.coordinates()) {
      coords.push_back({c[0], c[1]});
    }
  }
  return j.dump(2) + "\n";
}

Network network_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  try {
    const int node_count = j.at("V").get<int>();
    std::vector<Link> links;
    for (std::size_t i = 0; i < j.at("edges").size(); ++i) {
      const auto& e = j["edges"][i];
      Link l;
      l.u = e.at("u").get<int>();
      l.v = e.at("v").get<int>();
      l.params.epsilon = e.at("eps").get<double>();
      l.params.p_dark = e.at("p_dark").get<double>();
      l.params.beta = e.at("beta").get<double>();
      l.params.n_e = e.at("n_e").get<double>();
      links.push_back(l);
    }
    std::optional<std::vector<std::array<double, 2>>> coords;
    if (j.contains("coords")) {
      coords.emplace();
      for (const auto& c : j["coords"]) {
        coords->push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      }
    }
    return Network(node_count, std::move(links), std::move(coords));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
}

void save_network(const Network& network, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << network_to_json(network);
  if (!out) throw Error("write to " + path + " failed");
}

Network load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return network_from_json(buf.str());
}

}  // namespace fidroute
