// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "sclp/cut_enum.hpp"
#include "sclp/pool_io.hpp"
#include "sclp/sioux_falls.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

std::vector<std::vector<LinkId>> link_sets(const std::vector<CutSet>& cuts) {
  std::vector<std::vector<LinkId>> out;
  for (const auto& c : cuts) out.push_back(c.links);
  return out;
}

TEST(CutEnum, DiamondHasFourTwoLinkCuts) {
  const Network net = testing::diamond();
  const auto cuts = enumerate_st_cuts(net, 1, 4);
  EXPECT_EQ(link_sets(cuts), (std::vector<std::vector<LinkId>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(enumerate_st_cuts(net, 4, 1).empty());
  EXPECT_EQ(enumerate_st_cuts(net, 1, 4, 1).size(), 0u);
}

TEST(CutEnum, DiamondHistogram) {
  const CutPool pool = build_pool(testing::diamond(), std::nullopt);
  const auto h = size_histogram(pool);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].size, 2u);
  EXPECT_EQ(h[0].with_duplication, 4u);
  EXPECT_EQ(h[0].without_duplication, 4u);
}

TEST(CutEnum, ValidityAndMinimalityChecks) {
  const Network net = testing::diamond();
  const OdPair w{1, 4};
  const std::vector<LinkId> cut{0, 1};
  const std::vector<LinkId> super{0, 1, 2};
  const std::vector<LinkId> partial{0};
  EXPECT_TRUE(is_valid_cut(net, w, cut));
  EXPECT_TRUE(is_minimal_cut(net, w, cut));
  EXPECT_TRUE(is_valid_cut(net, w, super));
  EXPECT_FALSE(is_minimal_cut(net, w, super));
  EXPECT_FALSE(is_valid_cut(net, w, partial));
}

TEST(CutEnum, BoundaryCuts) {
  const Network net = testing::diamond();
  EXPECT_EQ(outflow_cut(net, 1).links, (std::vector<LinkId>{0, 1}));
  EXPECT_EQ(inflow_cut(net, 4).links, (std::vector<LinkId>{2, 3}));
}

TEST(CutEnum, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const Network net = testing::random_network(rng);
    for (const OdPair& w : net.od_pairs()) {
      const auto fast = enumerate_st_cuts(net, w.origin, w.destination);
      const auto slow = enumerate_st_cuts_brute(net, w.origin, w.destination);
      ASSERT_EQ(link_sets(fast), link_sets(slow)) << "trial " << trial;
      const auto capped = enumerate_st_cuts(net, w.origin, w.destination, 2);
      std::size_t small = 0;
      for (const auto& c : slow) small += c.size() <= 2 ? 1 : 0;
      ASSERT_EQ(capped.size(), small);
    }
  }
}

TEST(CutEnum, PoolIsIndependentOfWorkerCount) {
  const Network net = fixtures::sioux_falls();
  const CutPool one = build_pool(net, SizeCap{5}, {}, 1);
  const CutPool many = build_pool(net, SizeCap{5}, {}, 4);
  EXPECT_EQ(one, many);
}

TEST(CutEnum, OdFilterKeepsNetworkOrder) {
  const Network net = fixtures::sioux_falls();
  const CutPool pool = build_pool(net, SizeCap{4}, {{13, 1}, {1, 2}});
  ASSERT_EQ(pool.ods.size(), 2u);
  EXPECT_EQ(pool.ods[0], (OdPair{1, 2}));
  EXPECT_TRUE(pool.find_od({13, 1}).has_value());
  EXPECT_FALSE(pool.find_od({2, 1}).has_value());
  EXPECT_THROW(build_pool(net, SizeCap{4}, {{3, 1}}), InputError);
}

TEST(CutEnum, SiouxFallsSmallSizes) {
  const CutPool pool = build_pool(fixtures::sioux_falls(), SizeCap{4});
  const auto h = size_histogram(pool);
  ASSERT_GE(h.size(), 3u);
  EXPECT_EQ(h[0].size, 2u);
  EXPECT_EQ(h[0].with_duplication, 126u);
  EXPECT_EQ(h[0].without_duplication, 8u);
}

TEST(PoolIo, RoundTrip) {
  const Network net = fixtures::sioux_falls();
  const CutPool pool = build_pool(net, SizeCap{4});
  std::stringstream buf;
  save_pool(pool, buf);
  const CutPool back = load_pool(buf, net);
  EXPECT_EQ(back, pool);
}

TEST(PoolIo, RejectsForeignOrBrokenPools) {
  const Network net = testing::diamond();
  const CutPool pool = build_pool(net, std::nullopt);
  std::stringstream buf;
  save_pool(pool, buf);
  EXPECT_THROW(load_pool(buf, testing::two_way_diamond()), ParseError);

  std::stringstream broken;
  broken << "{\"network_hash\":\"" << net.fingerprint() << "\",\"max_size\":null}\n"
         << "{\"cut_id\":0,\"links\":[0]}\n"
         << "{\"od\":[1,4],\"cuts\":[0]}\n";
  try {
    load_pool(broken, net);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

}  // namespace
}  // namespace sclp
