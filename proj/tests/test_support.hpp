// SPDX-License-Identifier: Apache-2.0

#ifndef SCLP_TESTS_SUPPORT_HPP_
#define SCLP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sclp/network.hpp"

namespace sclp::testing {

// 1 -> {2,3} -> 4, centroids 1 and 4 unless given.
inline Network diamond(std::vector<NodeId> centroids = {1, 4}) {
  return Network::build({{1, 2, "a"}, {1, 3, "b"}, {2, 4, "c"}, {3, 4, "d"}}, std::move(centroids));
}

// Same diamond plus the reverse links, so both OD directions have paths.
inline Network two_way_diamond() {
  return Network::build({{1, 2, "1"}, {1, 3, "2"}, {2, 4, "3"}, {3, 4, "4"},
                         {2, 1, "5"}, {3, 1, "6"}, {4, 2, "7"}, {4, 3, "8"}},
                        {1, 4});
}

struct RandomShape {
  std::size_t max_nodes = 8;
  std::size_t max_links = 14;
};

// Random simple digraph with 2-3 centroids in which every OD pair has a path.
inline Network random_network(std::mt19937_64& rng, RandomShape shape = {}) {
  while (true) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, shape.max_nodes)(rng);
    const std::size_t lo = std::min<std::size_t>(n, shape.max_links);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(lo, shape.max_links)(rng);
    std::vector<std::pair<NodeId, NodeId>> all;
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = 1; v <= n; ++v)
        if (u != v) all.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(m, all.size()));
    std::vector<Link> links;
    std::set<NodeId> present;
    for (auto [u, v] : all) {
      links.push_back({u, v, ""});
      present.insert(u);
      present.insert(v);
    }
    std::vector<NodeId> nodes(present.begin(), present.end());
    if (nodes.size() < 3) continue;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    std::vector<NodeId> centroids(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(centroids.begin(), centroids.end());
    Network net = Network::build(links, centroids);
    bool connected = true;
    for (const OdPair& w : net.od_pairs())
      connected = connected && reachable(net, std::vector<bool>(net.link_count(), false), w.origin, w.destination);
    if (connected) return net;
  }
}

}  // namespace sclp::testing

#endif  // SCLP_TESTS_SUPPORT_HPP_
