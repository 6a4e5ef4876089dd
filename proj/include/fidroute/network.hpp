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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fidroute/curves.hpp"
#include "fidroute/rng.hpp"

namespace fidroute {

struct Link {
  int u;
  int v;
  LinkParams params;
};

// Undirected simple graph with per-link channel parameters; links carry the
// same parameters in both directions. Immutable once built.
class Network {
 public:
  Network(int node_count, std::vector<Link> links,
          std::optional<std::vector<std::array<double, 2>>> coordinates =
              std::nullopt);

  int node_count() const { return node_count_; }
  const std::vector<Link>& links() const { return links_; }
  const std::optional<std::vector<std::array<double, 2>>>& coordinates()
      const {
    return coordinates_;
  }

  /// Per node, (neighbor id, link index) pairs in link insertion order.
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const {
    return adjacency_;
  }

 private:
  int node_count_;
  std::vector<Link> links_;
  std::optional<std::vector<std::array<double, 2>>> coordinates_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

/// Uniform simple graph with exactly round(avg_degree * V / 2) links.
Network generate_er(int node_count, double avg_degree, std::uint64_t seed);

/// V points uniform in the unit square, linked below distance
/// r = sqrt(avg_degree / (V * pi)).
Network generate_rgg(int node_count, double avg_degree, std::uint64_t seed);

enum class Topology { er, rgg };

std::string to_string(Topology topology);
Topology topology_from_string(const std::string& name);

Network generate_network(Topology topology, int node_count, double avg_degree,
                         std::uint64_t seed);

/// eps ~ U(0.3, 0.4), p_dark ~ U(0, 1e-3), beta ~ U(0, 1e-3), n_e = 1.
LinkParams sample_link_params(Rng& rng);
LinkParams sample_link_params(std::uint64_t seed);

std::string network_to_json(const Network& network);
Network network_from_json(const std::string& text);
void save_network(const Network& network, const std::string& path);
Network load_network(const std::string& path);

}  // namespace fidroute
