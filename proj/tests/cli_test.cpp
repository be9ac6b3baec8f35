// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Cli : ::testing::Test {
  fs::path dir;
  std::string out;

  void SetUp() override {
    dir = fs::temp_directory_path() / ("sclp_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
    std::ofstream(dir / "links.tsv") << "link_id\tinit_node\tterm_node\n1\t1\t2\n2\t1\t3\n3\t2\t4\n4\t3\t4\n";
    std::ofstream(dir / "centroids.txt") << "1\n4\n";
    std::ofstream(dir / "two_way.tsv") << "link_id init_node term_node\n1 1 2\n2 1 3\n3 2 4\n4 3 4\n"
                                          "5 2 1\n6 3 1\n7 4 2\n8 4 3\n";
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string net(const std::string& links = "links.tsv") const {
    return " --network " + (dir / links).string() + " --centroids " + (dir / "centroids.txt").string();
  }

  int run(const std::string& args) {
    const fs::path log = dir / "stdout.txt";
    const int rc = std::system((std::string("'") + SCLP_CLI_PATH + "' " + args + " > '" + log.string() + "' 2>&1").c_str());
    std::ifstream in(log);
    std::ostringstream s;
    s << in.rdbuf();
    out = s.str();
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  nlohmann::json read(const std::string& name) const {
    std::ifstream in(dir / name);
    return nlohmann::json::parse(in);
  }
};

TEST_F(Cli, EnumPrintsHistogram) {
  ASSERT_EQ(run("enum" + net() + " --out " + (dir / "pool.jsonl").string()), 0) << out;
  EXPECT_NE(out.find("2: 4 / 4"), std::string::npos) << out;
  EXPECT_TRUE(fs::exists(dir / "pool.jsonl"));
}

TEST_F(Cli, FixtureHistogramFirstRow) {
  ASSERT_EQ(run("enum --seed-fixture sioux-falls --max-cut-size 3 --out " + (dir / "p.jsonl").string()), 0);
  EXPECT_NE(out.find("2: 126 / 8"), std::string::npos) << out;
}

TEST_F(Cli, MissingCentroidFileIsInputError) {
  EXPECT_EQ(run("enum --network " + (dir / "links.tsv").string() + " --centroids " + (dir / "nope.txt").string() +
                " --out " + (dir / "p.jsonl").string()),
            2);
  EXPECT_EQ(run("enum --out x"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, BoundsJson) {
  ASSERT_EQ(run("bounds --seed-fixture sioux-falls"), 0);
  EXPECT_EQ(nlohmann::json::parse(out)["csp1_upper_bound"], 45);
}

TEST_F(Cli, MinLinksOnDiamond) {
  ASSERT_EQ(run("solve min-links --filter none" + net() + " --out " + (dir / "p.json").string()), 0) << out;
  const auto j = read("p.json");
  EXPECT_EQ(j["objective"], 2.0);
  EXPECT_EQ(j["links"].size(), 2u);
  EXPECT_EQ(j["covered"].size(), 1u);
  EXPECT_EQ(j["stats"]["status"], "optimal");
}

TEST_F(Cli, CapOneIsInfeasible) {
  EXPECT_EQ(run("solve min-links --filter cap:1" + net() + " --out " + (dir / "p.json").string()), 1);
  EXPECT_NE(out.find("(1,4)"), std::string::npos) << out;
  EXPECT_EQ(run("solve min-links --filter cap:x" + net() + " --out " + (dir / "p.json").string()), 2);
}

TEST_F(Cli, MaxCoverageAndVerify) {
  ASSERT_EQ(run("solve max-coverage --budget 2 --cap 8" + net("two_way.tsv") + " --out " + (dir / "p.json").string()),
            0)
      << out;
  EXPECT_EQ(read("p.json")["objective"], 1.0);
  ASSERT_EQ(run("verify" + net("two_way.tsv") + " --placement " + (dir / "p.json").string()), 0) << out;
  EXPECT_NE(out.find("ratio: 1/2"), std::string::npos) << out;
}

TEST_F(Cli, ZeroBudget) {
  ASSERT_EQ(run("solve max-coverage --budget 0" + net("two_way.tsv") + " --out " + (dir / "p.json").string()), 0);
  EXPECT_NE(out.find("ratio 0.0000"), std::string::npos) << out;
}

TEST_F(Cli, SweepCsv) {
  ASSERT_EQ(run("solve max-coverage --sweep 0:4:2 --cap 2,8" + net("two_way.tsv") + " --csv " +
                (dir / "s.csv").string()),
            0)
      << out;
  std::ifstream in(dir / "s.csv");
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "budget,cap,covered,total,ratio,seconds");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6u);
}

TEST_F(Cli, NodeLimitExitsWithIncumbent) {
  EXPECT_EQ(run("solve max-coverage --seed-fixture sioux-falls --budget 16 --cap 6 --node-limit 1 --out " +
                (dir / "p.json").string()),
            3);
  EXPECT_EQ(read("p.json")["stats"]["status"], "budget-limit-hit");
}

TEST_F(Cli, SharedCuts) {
  ASSERT_EQ(run("shared-cuts --budget 2 --cap 8" + net()), 0) << out;
  const auto row = out.find("\n1\t");
  ASSERT_NE(row, std::string::npos) << out;
  EXPECT_NE(out.find("\t1\t", row + 3), std::string::npos) << out;
  EXPECT_EQ(out.find("\n2\t"), std::string::npos) << out;
  ASSERT_EQ(run("shared-cuts --budget 2 --cap 8 --min-shared 5" + net()), 0);
  EXPECT_EQ(out.find("\n1\t"), std::string::npos) << out;
}

TEST_F(Cli, PoolFileIsReused) {
  ASSERT_EQ(run("enum" + net() + " --out " + (dir / "pool.jsonl").string()), 0);
  ASSERT_EQ(run("solve min-links --filter none" + net() + " --pool " + (dir / "pool.jsonl").string() + " --out " +
                (dir / "p.json").string()),
            0)
      << out;
  std::ofstream(dir / "bad.jsonl") << "{\"network_hash\":\"0\",\"max_size\":null}\n";
  EXPECT_EQ(run("solve min-links --filter none" + net() + " --pool " + (dir / "bad.jsonl").string() + " --out " +
                (dir / "p.json").string()),
            2);
}

}  // namespace
