// SPDX-License-Identifier: Apache-2.0
//
// Sioux-Falls benchmark: 24 nodes, 76 links in the customary link order
// (label = 1-based row), 14 centroids.

#ifndef SCLP_SIOUX_FALLS_HPP_
#define SCLP_SIOUX_FALLS_HPP_

#include <array>
#include <utility>
#include <vector>

#include "sclp/network.hpp"

namespace sclp::fixtures {

inline constexpr std::array<std::pair<int, int>, 76> kSiouxFallsLinks{{
    {1, 2}, {1, 3}, {2, 1}, {2, 6}, {3, 1}, {3, 4}, {3, 12}, {4, 3},
    {4, 5}, {4, 11}, {5, 4}, {5, 6}, {5, 9}, {6, 2}, {6, 5}, {6, 8},
    {7, 8}, {7, 18}, {8, 6}, {8, 7}, {8, 9}, {8, 16}, {9, 5}, {9, 8},
    {9, 10}, {10, 9}, {10, 11}, {10, 15}, {10, 16}, {10, 17}, {11, 4}, {11, 10},
    {11, 12}, {11, 14}, {12, 3}, {12, 11}, {12, 13}, {13, 12}, {13, 24}, {14, 11},
    {14, 15}, {14, 23}, {15, 10}, {15, 14}, {15, 19}, {15, 22}, {16, 8}, {16, 10},
    {16, 17}, {16, 18}, {17, 10}, {17, 16}, {17, 19}, {18, 7}, {18, 16}, {18, 20},
    {19, 15}, {19, 17}, {19, 20}, {20, 18}, {20, 19}, {20, 21}, {20, 22}, {21, 20},
    {21, 22}, {21, 24}, {22, 15}, {22, 20}, {22, 21}, {22, 23}, {23, 14}, {23, 22},
    {23, 24}, {24, 13}, {24, 21}, {24, 23}}};

inline constexpr std::array<int, 14> kSiouxFallsCentroids{1, 2, 4, 5, 10, 11, 13, 14, 15, 19, 20, 21, 22, 24};

inline Network sioux_falls() {
  std::vector<Link> links;
  links.reserve(kSiouxFallsLinks.size());
  for (std::size_t i = 0; i < kSiouxFallsLinks.size(); ++i) {
    links.push_back({kSiouxFallsLinks[i].first, kSiouxFallsLinks[i].second, std::to_string(i + 1)});
  }
  return Network::build(std::move(links), {kSiouxFallsCentroids.begin(), kSiouxFallsCentroids.end()});
}

}  // namespace sclp::fixtures

#endif  // SCLP_SIOUX_FALLS_HPP_
