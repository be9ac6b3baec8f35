// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "sclp/network.hpp"
#include "sclp/sioux_falls.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

TEST(Network, BuildsAdjacencyAndOdPairs) {
  const Network net = testing::diamond();
  EXPECT_EQ(net.node_count(), 4u);
  EXPECT_EQ(net.link_count(), 4u);
  EXPECT_EQ(net.out_degree(1), 2u);
  EXPECT_EQ(net.in_degree(4), 2u);
  ASSERT_EQ(net.od_pairs().size(), 2u);
  EXPECT_EQ(net.od_pairs()[0], (OdPair{1, 4}));
  EXPECT_EQ(net.od_pairs()[1], (OdPair{4, 1}));
  EXPECT_EQ(net.link_by_label("c"), 2u);
}

TEST(Network, RejectsBadInput) {
  EXPECT_THROW(Network::build({{1, 1, ""}}, {1}), InputError);
  EXPECT_THROW(Network::build({{1, 2, ""}, {1, 2, ""}}, {1, 2}), InputError);
  EXPECT_THROW(Network::build({{1, 2, ""}}, {3}), InputError);
  EXPECT_THROW(Network::build({{1, 2, ""}}, {1, 1}), InputError);
  EXPECT_THROW(testing::diamond().node_index(9), InputError);
}

TEST(Network, Reachability) {
  const Network net = testing::diamond();
  const std::vector<LinkId> one{0};
  const std::vector<LinkId> both{0, 1};
  EXPECT_TRUE(reachable(net, std::span<const LinkId>{}, 1, 4));
  EXPECT_TRUE(reachable(net, one, 1, 4));
  EXPECT_FALSE(reachable(net, both, 1, 4));
  EXPECT_FALSE(reachable(net, std::span<const LinkId>{}, 4, 1));
}

TEST(Network, ReadsLinkTableAndCentroids) {
  std::istringstream links("# comment\n~ link_id\tinit_node\tterm_node\n7\t1\t2 ;\n8\t2\t1\n");
  std::istringstream cents("1\n2\n");
  const Network net = load_network(read_link_table(links), read_centroids(cents));
  EXPECT_EQ(net.link(0).label, "7");
  EXPECT_EQ(net.od_pairs().size(), 2u);

  std::istringstream json_cents("[2, 1]");
  EXPECT_EQ(read_centroids(json_cents), (std::vector<NodeId>{2, 1}));
}

TEST(Network, ParseErrorsCarryLineNumbers) {
  std::istringstream bad("init_node term_node\n1 2\n1 x\n");
  try {
    read_link_table(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream no_header("1 2\n");
  EXPECT_THROW(read_link_table(no_header), InputError);
  EXPECT_THROW(read_centroids_file("/nonexistent/centroids.txt"), InputError);
}

TEST(Network, SiouxFallsFixture) {
  const Network net = fixtures::sioux_falls();
  EXPECT_EQ(net.node_count(), 24u);
  EXPECT_EQ(net.link_count(), 76u);
  EXPECT_EQ(net.od_pairs().size(), 182u);
  EXPECT_EQ(net.fingerprint(), fixtures::sioux_falls().fingerprint());
  EXPECT_EQ(net.fingerprint().size(), 16u);
}

TEST(Network, SiouxFallsDataFilesMatchFixture) {
  const Network files = load_network_files(SCLP_DATA_DIR "/sioux_falls/links.tsv", SCLP_DATA_DIR "/sioux_falls/centroids.txt");
  EXPECT_EQ(files.fingerprint(), fixtures::sioux_falls().fingerprint());
}

}  // namespace
}  // namespace sclp
