// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "sclp/bounds.hpp"
#include "sclp/sioux_falls.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

TEST(Bounds, DiamondDegrees) {
  const BoundReport r = compute_bounds(testing::two_way_diamond());
  EXPECT_EQ(r.per_origin_cap.at(1), 2u);
  EXPECT_EQ(r.per_destination_cap.at(4), 2u);
  EXPECT_EQ(r.per_od_min_cut_cap.at({1, 4}), 2u);
  EXPECT_EQ(r.csp1_upper_bound, 4u);
}

TEST(Bounds, SiouxFallsUpperBoundIs45) {
  const BoundReport r = compute_bounds(fixtures::sioux_falls());
  EXPECT_EQ(r.csp1_upper_bound, 45u);
  const auto j = to_json(r);
  EXPECT_EQ(j["csp1_upper_bound"], 45);
  EXPECT_EQ(j["per_od_min_cut_cap"].size(), 182u);
}

TEST(Bounds, MinCutNeverExceedsDegreeCap) {
  const Network net = fixtures::sioux_falls();
  const BoundReport r = compute_bounds(net);
  const CutPool pool = build_pool(net, SizeCap{4});
  for (std::size_t i = 0; i < pool.ods.size(); ++i) {
    std::size_t smallest = SIZE_MAX;
    for (CutId c : pool.membership[i]) smallest = std::min(smallest, pool.cuts[c].size());
    EXPECT_LE(smallest, r.per_od_min_cut_cap.at(pool.ods[i]));
  }
}

TEST(Bounds, Lemma2FilterKeepsOutflowCuts) {
  const Network net = fixtures::sioux_falls();
  const BoundReport r = compute_bounds(net);
  const CutPool filtered = lemma2_filter(build_pool(net, SizeCap{5}), r);
  for (std::size_t i = 0; i < filtered.ods.size(); ++i) {
    const CutSet out = outflow_cut(net, filtered.ods[i].origin);
    bool found = false;
    for (CutId c : filtered.membership[i]) {
      found = found || filtered.cuts[c] == out;
      EXPECT_LE(filtered.cuts[c].size(), net.out_degree(filtered.ods[i].origin));
    }
    EXPECT_TRUE(found);
  }
}

TEST(Bounds, SizeCapFilter) {
  const Network net = testing::diamond();
  const CutPool pool = build_pool(net, std::nullopt);
  EXPECT_EQ(size_cap_filter(pool, 2), pool);
  const CutPool none = size_cap_filter(pool, 1);
  EXPECT_EQ(none.total_rows(), 0u);
  EXPECT_EQ(uncoverable_ods(none).size(), 1u);
  EXPECT_THROW(size_cap_filter(pool, 0), InputError);
}

TEST(Bounds, Lemma2ReportsEmptyOd) {
  const Network net = testing::diamond();
  const CutPool empty = size_cap_filter(build_pool(net, std::nullopt), 1);
  EXPECT_THROW(lemma2_filter(empty, compute_bounds(net)), InfeasibleError);
}

}  // namespace
}  // namespace sclp
