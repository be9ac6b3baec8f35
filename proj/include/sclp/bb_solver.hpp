// SPDX-License-Identifier: Apache-2.0
//
// LP-based branch and bound for pure 0-1 programs with SOS1 groups.
//
// The relaxation is built from the model with one strengthening: when a
// variable y belongs to an SOS1 group that also appears as a linear
// "sum <= 1" or "sum = 1" row, the two-term rows y - x <= 0 of that group
// are merged per x into sum(y) - x <= 0. For 0-1 points this is the same
// set, but the LP becomes much tighter. Node LPs are reoptimised with the
// dual simplex from the root basis.

#ifndef SCLP_BB_SOLVER_HPP_
#define SCLP_BB_SOLVER_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "sclp/csp_model.hpp"
#include "sclp/simplex.hpp"

namespace sclp {

enum class BranchRule { kSos1First, kMostFractional };
enum class SolveStatus { kOptimal, kInfeasible, kBudgetLimitHit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kBudgetLimitHit: return "budget-limit-hit";
  }
  return "unknown";
}

struct SolveOptions {
  double integrality_tol = 1e-6;
  double gap_tol = 0.0;
  std::optional<std::size_t> node_limit;
  std::optional<double> time_limit_seconds;
  BranchRule branching = BranchRule::kSos1First;
  /// Search is deterministic; the seed is kept for interface stability.
  std::uint64_t seed = 0;
  bool aggregate_sos1 = true;
  bool log = false;
  /// Feasible starting incumbent (checked before use).
  std::optional<Assignment> initial;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  Assignment best;
  double objective = 0.0;
  double dual_bound = 0.0;
  std::size_t nodes = 0;
  /// Times the search had to branch on a priority-0 variable while every
  /// higher-priority variable was integral.
  std::size_t low_priority_branches = 0;
  std::vector<BoundPoint> bound_trace;
  double seconds = 0.0;
  std::string certificate;
};

/// Variable fixings: -1 free, 0 or 1 fixed.
using Fixings = std::vector<std::int8_t>;

struct LpRelaxation {
  bool feasible = false;
  /// Optimal relaxation value in the model's own sense.
  double bound = 0.0;
  std::vector<double> values;
};

namespace detail {

/// Relaxation rows: the model's rows with SOS1-clique aggregation applied.
inline std::vector<Constraint> relaxation_rows(const IlpModel& m, bool aggregate) {
  if (!aggregate || m.sos1.empty()) return m.constraints;
  // Groups that are also linear clique rows.
  std::map<std::vector<std::size_t>, std::size_t> by_set;
  for (std::size_t g = 0; g < m.sos1.size(); ++g) {
    auto key = m.sos1[g];
    std::sort(key.begin(), key.end());
    by_set.emplace(std::move(key), g);
  }
  std::vector<char> clique(m.sos1.size(), 0);
  for (const Constraint& c : m.constraints) {
    if (c.cmp == Cmp::kGe || c.rhs != 1.0) continue;
    std::vector<std::size_t> vars;
    bool ones = true;
    for (const Term& t : c.terms) {
      ones = ones && t.coef == 1.0;
      vars.push_back(t.var);
    }
    if (!ones) continue;
    std::sort(vars.begin(), vars.end());
    auto it = by_set.find(vars);
    if (it != by_set.end()) clique[it->second] = 1;
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> group_of(m.var_count(), kNone);
  for (std::size_t g = 0; g < m.sos1.size(); ++g) {
    if (!clique[g]) continue;
    for (std::size_t v : m.sos1[g])
      if (group_of[v] == kNone) group_of[v] = g;
  }
  std::vector<Constraint> rows;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> merged;  // (group, x) -> row
  for (const Constraint& c : m.constraints) {
    const bool closure = c.cmp == Cmp::kLe && c.rhs == 0.0 && c.terms.size() == 2 &&
                         c.terms[0].coef == 1.0 && c.terms[1].coef == -1.0 &&
                         group_of[c.terms[0].var] != kNone;
    if (!closure) {
      rows.push_back(c);
      continue;
    }
    const auto key = std::make_pair(group_of[c.terms[0].var], c.terms[1].var);
    auto [it, inserted] = merged.try_emplace(key, rows.size());
    if (inserted) {
      rows.push_back(c);
    } else {
      auto& terms = rows[it->second].terms;
      terms.insert(terms.end() - 1, c.terms[0]);
    }
  }
  return rows;
}

inline lp::LpProblem make_lp(const IlpModel& m, bool aggregate) {
  lp::LpProblem p;
  const double sign = m.sense == Sense::kMaximize ? -1.0 : 1.0;
  for (double c : m.objective) p.cost.push_back(sign * c);
  p.lower.assign(m.var_count(), 0.0);
  p.upper.assign(m.var_count(), 1.0);
  p.rows = relaxation_rows(m, aggregate);
  return p;
}

inline bool integral_objective(const IlpModel& m) {
  for (double c : m.objective)
    if (c != std::round(c)) return false;
  return true;
}

}  // namespace detail

/// Continuous relaxation over [0,1] with the given fixings. The bound is in
/// the model's sense (an upper bound for maximisation).
inline LpRelaxation lp_relax(const IlpModel& model, const Fixings& fixings = {}, bool aggregate = true) {
  lp::LpProblem p = detail::make_lp(model, aggregate);
  for (std::size_t j = 0; j < fixings.size(); ++j) {
    if (fixings[j] >= 0) p.lower[j] = p.upper[j] = fixings[j];
  }
  lp::DenseSimplex s(p);
  LpRelaxation r;
  if (s.solve() != lp::LpStatus::kOptimal) return r;
  r.feasible = true;
  r.values = s.primal();
  r.bound = model.sense == Sense::kMaximize ? -s.objective() : s.objective();
  return r;
}

struct BranchDecision {
  enum class Kind { kNone, kSos1Split, kVariable } kind = Kind::kNone;
  std::size_t group = 0;
  std::size_t var = 0;
  /// For kSos1Split: the two sides; each child fixes one side to zero.
  std::vector<std::size_t> left, right;
};

/// SOS1 split when a group has two or more positive members, else the most
/// fractional variable of the highest branch priority. Ties go to the lowest
/// index.
inline BranchDecision branch_select(const std::vector<double>& values, const IlpModel& model,
                                    double tol = 1e-6, BranchRule rule = BranchRule::kSos1First) {
  BranchDecision d;
  if (rule == BranchRule::kSos1First) {
    double best_mass = 0.0;
    for (std::size_t g = 0; g < model.sos1.size(); ++g) {
      const auto& vars = model.sos1[g];
      double total = 0.0, top = 0.0;
      int positive = 0;
      for (std::size_t v : vars) {
        if (values[v] > tol) {
          ++positive;
          total += values[v];
          top = std::max(top, values[v]);
        }
      }
      if (positive < 2) continue;
      const double spread = total - top;
      if (spread > best_mass + 1e-12) {
        best_mass = spread;
        d.kind = BranchDecision::Kind::kSos1Split;
        d.group = g;
      }
    }
    if (d.kind == BranchDecision::Kind::kSos1Split) {
      const auto& vars = model.sos1[d.group];
      double total = 0.0;
      for (std::size_t v : vars) total += values[v] > tol ? values[v] : 0.0;
      double acc = 0.0;
      std::size_t split = 0;
      int seen = 0;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (values[vars[k]] <= tol) continue;
        acc += values[vars[k]];
        ++seen;
        split = k;
        if (acc >= total / 2) break;
      }
      // Both sides must keep a positive member.
      if (seen == 0) split = 0;
      std::size_t last_positive = 0;
      for (std::size_t k = 0; k < vars.size(); ++k)
        if (values[vars[k]] > tol) last_positive = k;
      if (split >= last_positive) {
        for (std::size_t k = last_positive; k-- > 0;) {
          if (values[vars[k]] > tol) {
            split = k;
            break;
          }
        }
      }
      d.left.assign(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(split + 1));
      d.right.assign(vars.begin() + static_cast<std::ptrdiff_t>(split + 1), vars.end());
      return d;
    }
  }
  int best_priority = std::numeric_limits<int>::min();
  double best_frac = tol;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double frac = std::min(values[j], 1.0 - values[j]);
    if (frac <= tol) continue;
    const int pr = model.branch_priority.empty() ? 0 : model.branch_priority[j];
    if (pr > best_priority || (pr == best_priority && frac > best_frac + 1e-12)) {
      best_priority = pr;
      best_frac = frac;
      d.kind = BranchDecision::Kind::kVariable;
      d.var = j;
    }
  }
  return d;
}

/// Exact branch and bound. Returned assignments are re-checked against the
/// original model.
inline SolveResult solve(const IlpModel& model, const SolveOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  const bool maximize = model.sense == Sense::kMaximize;
  const bool integral = detail::integral_objective(model);
  const std::size_t n = model.var_count();

  SolveResult res;
  bool have_incumbent = false;
  double best_bound_seen = maximize ? lp::kInf : -lp::kInf;

  for (const Constraint& c : model.constraints) {
    if (c.terms.empty() && ((c.cmp == Cmp::kEq && c.rhs != 0) || (c.cmp == Cmp::kGe && c.rhs > 0) ||
                            (c.cmp == Cmp::kLe && c.rhs < 0))) {
      res.status = SolveStatus::kInfeasible;
      res.certificate = "empty constraint cannot be satisfied";
      res.seconds = elapsed();
      return res;
    }
  }

  auto better = [&](double a, double b) { return maximize ? a > b + 1e-9 : a < b - 1e-9; };
  auto prunable = [&](double bound) {
    if (!have_incumbent) return false;
    double b = bound;
    if (integral) b = maximize ? std::floor(bound + 1e-6) : std::ceil(bound - 1e-6);
    return maximize ? b <= res.objective + opts.gap_tol + 1e-9 : b >= res.objective - opts.gap_tol - 1e-9;
  };
  auto offer = [&](const Assignment& a, std::size_t node) {
    if (first_violation(model, a)) return;
    const double v = evaluate_objective(model, a);
    if (have_incumbent && !better(v, res.objective)) return;
    have_incumbent = true;
    res.best = a;
    res.objective = v;
    res.bound_trace.push_back({node, v, best_bound_seen, elapsed()});
    if (opts.log) {
      std::cerr << "node " << node << " incumbent " << v << " bound " << best_bound_seen << " elapsed "
                << elapsed() << "s\n";
    }
  };
  if (opts.initial && opts.initial->size() == n) offer(*opts.initial, 0);

  lp::LpProblem root_lp = detail::make_lp(model, opts.aggregate_sos1);
  lp::DenseSimplex root(root_lp);
  const lp::LpStatus root_status = root.solve();
  if (root_status != lp::LpStatus::kOptimal) {
    res.status = have_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    if (root_status != lp::LpStatus::kInfeasible) res.status = SolveStatus::kBudgetLimitHit;
    res.certificate = "root relaxation infeasible";
    res.seconds = elapsed();
    return res;
  }

  struct Node {
    std::vector<std::pair<std::size_t, std::int8_t>> fix;
    double bound = 0.0;
    std::size_t depth = 0;
    std::size_t order = 0;
  };
  auto worse_node = [&](const Node& a, const Node& b) {
    if (a.bound != b.bound) return maximize ? a.bound < b.bound : a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order > b.order;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse_node)> open(worse_node);
  std::size_t order = 0;
  std::optional<Node> next = Node{{}, maximize ? lp::kInf : -lp::kInf, 0, order++};
  bool limit_hit = false;
  double open_bound_lost = maximize ? -lp::kInf : lp::kInf;

  while (next || !open.empty()) {
    Node node;
    if (next) {
      node = std::move(*next);
      next.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (prunable(node.bound)) continue;
    if ((opts.node_limit && res.nodes >= *opts.node_limit) ||
        (opts.time_limit_seconds && elapsed() > *opts.time_limit_seconds)) {
      open.push(std::move(node));
      limit_hit = true;
      break;
    }
    ++res.nodes;

    lp::DenseSimplex work = root;
    for (auto [v, val] : node.fix) work.set_bounds(v, val, val);
    const lp::LpStatus st = node.fix.empty() ? lp::LpStatus::kOptimal : work.reoptimize();
    if (st == lp::LpStatus::kInfeasible) continue;
    if (st != lp::LpStatus::kOptimal) {
      limit_hit = true;
      open_bound_lost = maximize ? std::max(open_bound_lost, node.bound) : std::min(open_bound_lost, node.bound);
      continue;
    }
    double bound = maximize ? -work.objective() : work.objective();
    bound = maximize ? std::min(bound, node.bound) : std::max(bound, node.bound);
    if (node.depth == 0) best_bound_seen = bound;
    if (prunable(bound)) continue;
    const std::vector<double> x = work.primal();

    bool all_integral = true;
    for (double v : x) {
      if (std::min(v, 1.0 - v) > opts.integrality_tol) {
        all_integral = false;
        break;
      }
    }
    // Rounding the relaxation is a cheap incumbent heuristic.
    Assignment rounded(n);
    for (std::size_t j = 0; j < n; ++j) rounded[j] = x[j] > 0.5 ? 1 : 0;
    offer(rounded, res.nodes);
    if (all_integral) continue;

    const BranchDecision d = branch_select(x, model, opts.integrality_tol, opts.branching);
    if (d.kind == BranchDecision::Kind::kNone) continue;
    Node a{node.fix, bound, node.depth + 1, order++};
    Node b{node.fix, bound, node.depth + 1, order++};
    if (d.kind == BranchDecision::Kind::kSos1Split) {
      double left_mass = 0.0, right_mass = 0.0;
      for (std::size_t v : d.left) left_mass += x[v];
      for (std::size_t v : d.right) right_mass += x[v];
      // a zeroes the lighter side and is explored first.
      const auto& zero_first = left_mass < right_mass ? d.left : d.right;
      const auto& zero_second = left_mass < right_mass ? d.right : d.left;
      for (std::size_t v : zero_first) a.fix.emplace_back(v, 0);
      for (std::size_t v : zero_second) b.fix.emplace_back(v, 0);
    } else {
      const int pr = model.branch_priority.empty() ? 0 : model.branch_priority[d.var];
      if (pr == 0) {
        bool higher_integral = true;
        for (std::size_t j = 0; j < n && higher_integral; ++j) {
          if (model.branch_priority[j] > 0 && std::min(x[j], 1.0 - x[j]) > opts.integrality_tol) {
            higher_integral = false;
          }
        }
        if (higher_integral && std::any_of(model.branch_priority.begin(), model.branch_priority.end(),
                                           [](int p) { return p > 0; })) {
          ++res.low_priority_branches;
        }
      }
      const std::int8_t first = x[d.var] >= 0.5 ? 1 : 0;
      a.fix.emplace_back(d.var, first);
      b.fix.emplace_back(d.var, static_cast<std::int8_t>(1 - first));
    }
    open.push(std::move(b));
    next = std::move(a);
  }

  res.seconds = elapsed();
  if (limit_hit) {
    double bound = have_incumbent ? res.objective : (maximize ? -lp::kInf : lp::kInf);
    bound = maximize ? std::max(bound, open_bound_lost) : std::min(bound, open_bound_lost);
    if (next) open.push(std::move(*next));
    while (!open.empty()) {
      const double b = open.top().bound;
      bound = maximize ? std::max(bound, b) : std::min(bound, b);
      open.pop();
    }
    res.dual_bound = bound;
    res.status = SolveStatus::kBudgetLimitHit;
    return res;
  }
  if (!have_incumbent) {
    res.status = SolveStatus::kInfeasible;
    res.certificate = "search exhausted without a feasible assignment";
    return res;
  }
  res.status = SolveStatus::kOptimal;
  res.dual_bound = res.objective;
  return res;
}

}  // namespace sclp

#endif  // SCLP_BB_SOLVER_HPP_
