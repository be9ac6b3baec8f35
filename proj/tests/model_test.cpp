// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "sclp/csp_model.hpp"
#include "sclp/cut_enum.hpp"
#include "test_support.hpp"

namespace sclp {
namespace {

struct Diamond : ::testing::Test {
  Network net = testing::diamond();
  CutPool pool = build_pool(net, std::nullopt);
  PsiStructure psi = build_psi(net, pool);
};

TEST_F(Diamond, PsiShape) {
  EXPECT_EQ(psi.row_count(), 4u);
  EXPECT_EQ(psi.col_count(), 4u);
  EXPECT_EQ(psi.arc_count(), 8u);
  ASSERT_EQ(psi.groups.size(), 1u);
  EXPECT_EQ(psi.groups[0], (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(psi.arcs(0), (std::vector<LinkId>{0, 1}));
}

TEST_F(Diamond, PsiRejectsBadWeights) {
  EXPECT_THROW(build_psi(net, pool, {-1.0}), InputError);
  EXPECT_THROW(build_psi(net, pool, {1.0, 2.0}), InputError);
  EXPECT_THROW(build_psi(net, pool, {}, {1, 1, -1, 1}), InputError);
  EXPECT_THROW(build_psi(net, CutPool{}), InputError);
}

TEST_F(Diamond, Csp1Model) {
  const IlpModel m = build_csp1(psi);
  EXPECT_EQ(m.sense, Sense::kMinimize);
  EXPECT_EQ(m.y_count, 4u);
  EXPECT_EQ(m.x_count, 4u);
  ASSERT_EQ(m.sos1.size(), 1u);
  // y0 with x0, x1
  const Assignment a = assignment_from_choice(m, psi, {0, 1}, {CutId{0}});
  EXPECT_FALSE(first_violation(m, a).has_value());
  EXPECT_EQ(evaluate_objective(m, a), 2.0);
  const Placement p = extract_placement(m, a, psi);
  EXPECT_EQ(p.chosen_links, (std::vector<LinkId>{0, 1}));
  ASSERT_TRUE(p.chosen_cuts[0].has_value());
  EXPECT_EQ(*p.chosen_cuts[0], 0u);
}

TEST_F(Diamond, ExtractRejectsViolations) {
  const IlpModel m = build_csp1(psi);
  Assignment a = assignment_from_choice(m, psi, {0}, {CutId{0}});
  EXPECT_THROW(extract_placement(m, a, psi), IntegrityError);
  a = assignment_from_choice(m, psi, {0, 1, 2, 3}, {std::nullopt});
  EXPECT_THROW(extract_placement(m, a, psi), IntegrityError);
}

TEST_F(Diamond, Csp2BudgetRow) {
  const IlpModel m = build_csp2(psi, 1);
  EXPECT_EQ(m.sense, Sense::kMaximize);
  const Assignment a = assignment_from_choice(m, psi, {0, 1}, {CutId{0}});
  EXPECT_TRUE(first_violation(m, a).has_value());
  const Assignment ok = assignment_from_choice(m, psi, {0}, {std::nullopt});
  EXPECT_FALSE(first_violation(m, ok).has_value());
}

TEST_F(Diamond, Csp0MixesBenefitAndCost) {
  const IlpModel m = build_csp0(build_psi(net, pool, {5.0}));
  const Assignment a = assignment_from_choice(m, psi, {0, 1}, {CutId{0}});
  EXPECT_EQ(evaluate_objective(m, a), 3.0);
}

TEST_F(Diamond, LpFormat) {
  std::ostringstream out;
  write_lp_format(build_csp1(psi), out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("Binaries"), std::string::npos);
  EXPECT_NE(text.find("SOS"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

TEST(Model, Csp1EmptyGroupIsInfeasible) {
  const Network net = testing::two_way_diamond();
  CutPool pool = build_pool(net, std::nullopt);
  pool.membership[1].clear();
  EXPECT_THROW(build_csp1(build_psi(net, pool)), InfeasibleError);
}

}  // namespace
}  // namespace sclp
