// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "sclp/bb_solver.hpp"
#include "sclp/bounds.hpp"
#include "sclp/coverage_oracle.hpp"
#include "sclp/coverage_search.hpp"
#include "sclp/simplex.hpp"
#include "sclp/sioux_falls.hpp"
#include "sclp/solve.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

using lp::DenseSimplex;
using lp::LpProblem;
using lp::LpStatus;

TEST(Simplex, CoveringRow) {
  LpProblem p{{1, 1}, {0, 0}, {1, 1}, {{{{0, 1}, {1, 1}}, Cmp::kGe, 1}}};
  DenseSimplex s(p);
  ASSERT_EQ(s.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.objective(), 1.0, 1e-9);
}

TEST(Simplex, ReoptimizeAfterBoundChange) {
  LpProblem p{{-3, -2}, {0, 0}, {3, 10}, {{{{0, 1}, {1, 1}}, Cmp::kLe, 4}, {{{0, 1}, {1, 3}}, Cmp::kLe, 6}}};
  DenseSimplex s(p);
  ASSERT_EQ(s.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.objective(), -11.0, 1e-9);
  EXPECT_NEAR(s.primal()[0], 3.0, 1e-9);
  s.set_bounds(0, 0, 2);
  ASSERT_EQ(s.reoptimize(), LpStatus::kOptimal);
  EXPECT_NEAR(s.objective(), -26.0 / 3.0, 1e-9);
}

TEST(Simplex, EqualityAndInfeasibility) {
  LpProblem p{{0, 1}, {0, 0}, {1, 1}, {{{{0, 1}, {1, 1}}, Cmp::kEq, 1.5}, {{{0, 1}, {1, -1}}, Cmp::kGe, 0.5}}};
  DenseSimplex s(p);
  ASSERT_EQ(s.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.objective(), 0.5, 1e-9);
  s.set_bounds(0, 0, 0.6);
  EXPECT_EQ(s.reoptimize(), LpStatus::kInfeasible);
}

TEST(BranchAndBound, SmallKnapsack) {
  IlpModel m;
  m.sense = Sense::kMaximize;
  for (double v : {5.0, 4.0, 3.0}) m.add_var("v", v);
  m.add_constraint({{0, 2}, {1, 3}, {2, 1}}, Cmp::kLe, 4);
  const SolveResult r = solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 8.0);
  EXPECT_EQ(r.best, (Assignment{1, 0, 1}));
}

TEST(BranchAndBound, InfeasibleModel) {
  IlpModel m;
  m.add_var("a", 1);
  m.add_constraint({{0, 1}}, Cmp::kGe, 2);
  EXPECT_EQ(solve(m).status, SolveStatus::kInfeasible);
}

TEST(BranchAndBound, NodeLimitKeepsIncumbent) {
  IlpModel m;
  m.sense = Sense::kMaximize;
  std::mt19937_64 rng(3);
  std::vector<Term> row;
  for (std::size_t j = 0; j < 40; ++j) {
    m.add_var("v" + std::to_string(j), 10.0 + static_cast<double>(rng() % 90));
    row.push_back({j, 10.0 + static_cast<double>(rng() % 90)});
  }
  m.add_constraint(row, Cmp::kLe, 500);
  SolveOptions o;
  o.node_limit = 1;
  const SolveResult r = solve(m, o);
  EXPECT_EQ(r.status, SolveStatus::kBudgetLimitHit);
  EXPECT_FALSE(first_violation(m, r.best).has_value());
  EXPECT_GE(r.dual_bound, r.objective);
}

TEST(Solve, DiamondMinLinks) {
  const Network net = testing::diamond();
  const Placement p = solve_min_links(net, build_pool(net, std::nullopt));
  EXPECT_EQ(p.objective, 2.0);
  EXPECT_EQ(p.stats.status, "optimal");
}

TEST(Solve, DiamondCapOneIsInfeasible) {
  const Network net = testing::diamond();
  EXPECT_THROW(solve_min_links(net, size_cap_filter(build_pool(net, std::nullopt), 1)), InfeasibleError);
}

TEST(Solve, ZeroBudgetCoversNothing) {
  const Network net = testing::two_way_diamond();
  const Placement p = solve_max_coverage(net, build_pool(net, std::nullopt), 0);
  EXPECT_EQ(p.objective, 0.0);
  EXPECT_TRUE(p.chosen_links.empty());
}

TEST(Solve, WeightedBenefits) {
  const Network net = testing::two_way_diamond();
  const CutPool pool = build_pool(net, std::nullopt);
  const Placement p = solve_max_coverage(net, pool, 2, {}, {1.0, 5.0});
  EXPECT_EQ(p.objective, 5.0);
  ASSERT_EQ(p.covered_ods.size(), 1u);
  EXPECT_EQ(p.covered_ods[0], (OdPair{4, 1}));
}

TEST(Solve, RandomGraphsAgreeWithBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Network net = testing::random_network(rng);
    const CutPool pool = build_pool(net, std::nullopt);
    const Placement p1 = solve_min_links(net, pool);
    ASSERT_EQ(static_cast<std::size_t>(p1.objective), brute_min_links(net).value) << "trial " << trial;
    const PsiStructure psi = build_psi(net, pool);
    for (std::size_t k = 0; k <= 4; ++k) {
      const std::size_t truth = brute_max_coverage(net, k).value;
      const Placement p2 = solve_max_coverage(net, pool, k);
      ASSERT_EQ(static_cast<std::size_t>(p2.objective), truth) << "trial " << trial << " K=" << k;
      const SolveResult generic = solve(build_csp2(psi, k));
      ASSERT_EQ(static_cast<std::size_t>(generic.objective), truth) << "trial " << trial << " K=" << k;
    }
  }
}

TEST(Solve, IntegralYGivesIntegralX) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Network net = testing::random_network(rng);
    const PsiStructure psi = build_psi(net, build_pool(net, std::nullopt));
    const IlpModel m = build_csp1(psi);
    Fixings fix(m.var_count(), -1);
    for (std::size_t g = 0; g < psi.groups.size(); ++g) {
      const std::size_t pick = psi.groups[g][static_cast<std::size_t>(rng() % psi.groups[g].size())];
      for (std::size_t l : psi.groups[g]) fix[l] = l == pick ? 1 : 0;
    }
    const LpRelaxation r = lp_relax(m, fix, false);
    ASSERT_TRUE(r.feasible);
    for (std::size_t j = m.y_count; j < m.var_count(); ++j) {
      EXPECT_NEAR(r.values[j], std::round(r.values[j]), 1e-7);
    }
  }
}

TEST(CoverageSearch, SiouxFallsSmallBudgets) {
  const Network net = fixtures::sioux_falls();
  const CutPool pool = build_pool(net, SizeCap{8});
  EXPECT_EQ(solve_max_coverage(net, pool, 4).objective, 48.0);
  EXPECT_EQ(solve_max_coverage(net, pool, 12).objective, 110.0);
}

TEST(CoverageSearch, NodeLimitReportsLimitHit) {
  const Network net = fixtures::sioux_falls();
  const CutPool pool = build_pool(net, SizeCap{8});
  SolveOptions o;
  o.node_limit = 1;
  const Placement p = solve_max_coverage(net, pool, 16, o);
  EXPECT_EQ(p.stats.status, "budget-limit-hit");
  EXPECT_GE(p.stats.dual_bound, p.objective);
  EXPECT_LE(p.chosen_links.size(), 16u);
}

TEST(SharedCuts, DiamondSingleOd) {
  const Network net = testing::diamond();
  const CutPool pool = build_pool(net, std::nullopt);
  const Placement p = solve_max_coverage(net, pool, 2);
  const auto rows = shared_cuts(build_psi(net, pool), p);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].shared, 1u);
  EXPECT_TRUE(shared_cuts(build_psi(net, pool), p, 2).empty());
}

}  // namespace
}  // namespace sclp
