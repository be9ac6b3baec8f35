// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "sclp/coverage_oracle.hpp"
#include "sclp/sioux_falls.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

TEST(Oracle, VerifyCoverage) {
  const Network net = testing::two_way_diamond();
  const std::vector<LinkId> out_of_1{0, 1};
  const CoverageReport r = verify_coverage(net, out_of_1);
  EXPECT_TRUE(r.is_covered({1, 4}));
  EXPECT_FALSE(r.is_covered({4, 1}));
  EXPECT_EQ(r.covered_count(), 1u);
  EXPECT_DOUBLE_EQ(r.ratio(), 0.5);
  EXPECT_THROW(r.is_covered({2, 3}), InputError);
  const std::vector<LinkId> bad{99};
  EXPECT_THROW(verify_coverage(net, bad), InputError);
}

TEST(Oracle, BruteMinLinks) {
  const BruteResult r = brute_min_links(testing::two_way_diamond());
  EXPECT_EQ(r.value, 4u);
  EXPECT_EQ(r.witness, (std::vector<LinkId>{0, 1, 4, 5}));
}

TEST(Oracle, BruteMaxCoverage) {
  const Network net = testing::two_way_diamond();
  EXPECT_EQ(brute_max_coverage(net, 0).value, 0u);
  EXPECT_EQ(brute_max_coverage(net, 1).value, 0u);
  const BruteResult two = brute_max_coverage(net, 2);
  EXPECT_EQ(two.value, 1u);
  EXPECT_EQ(two.witness, (std::vector<LinkId>{0, 1}));
  EXPECT_EQ(brute_max_coverage(net, 4).value, 2u);
}

TEST(Oracle, RefusesLargeNetworks) {
  EXPECT_THROW(brute_min_links(fixtures::sioux_falls()), InputError);
}

TEST(Oracle, SiouxFallsOutflowPlacementCoversEverything) {
  const Network net = fixtures::sioux_falls();
  std::vector<LinkId> links;
  for (NodeId q : net.centroids())
    for (LinkId e : net.out_links(q)) links.push_back(e);
  EXPECT_EQ(links.size(), 45u);
  EXPECT_EQ(verify_coverage(net, links).covered_count(), 182u);
}

}  // namespace
}  // namespace sclp
