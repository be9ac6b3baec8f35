// SPDX-License-Identifier: Apache-2.0
//
// End-to-end CSP1 / CSP2 solves on a cut pool, with the per-OD cut
// assignment and the shared-cut table.

#ifndef SCLP_SOLVE_HPP_
#define SCLP_SOLVE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sclp/bb_solver.hpp"
#include "sclp/coverage_oracle.hpp"
#include "sclp/coverage_search.hpp"
#include "sclp/csp_model.hpp"
#include "sclp/cut_enum.hpp"
#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

/// For each OD, the smallest pool cut inside `links` (ties: lowest cut id,
/// i.e. lexicographically first), or nothing.
inline std::vector<std::optional<CutId>> assign_cuts(const PsiStructure& psi, const std::vector<LinkId>& links) {
  std::vector<char> on(psi.col_count(), 0);
  for (LinkId e : links) on.at(e) = 1;
  std::vector<std::optional<CutId>> pick(psi.ods.size());
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    for (std::size_t l : psi.groups[g]) {
      const CutId c = psi.rows[l].cut;
      const auto& cl = psi.cuts[c].links;
      if (!std::all_of(cl.begin(), cl.end(), [&](LinkId e) { return on[e] != 0; })) continue;
      if (!pick[g] || cl.size() < psi.cuts[*pick[g]].size() ||
          (cl.size() == psi.cuts[*pick[g]].size() && c < *pick[g])) {
        pick[g] = c;
      }
    }
  }
  return pick;
}

/// Checks a placement against the pool structure and the reachability
/// oracle. `exactly_one` is the CSP1 group rule; `budget` the CSP2 one.
/// Throws IntegrityError.
inline void check_placement(const Network& net, const PsiStructure& psi, const Placement& p, bool exactly_one,
                            std::optional<std::size_t> budget) {
  if (p.chosen_cuts.size() != psi.ods.size()) throw IntegrityError("placement does not match the pool");
  if (budget && p.chosen_links.size() > *budget) throw IntegrityError("placement exceeds the link budget");
  std::vector<char> on(net.link_count(), 0);
  for (LinkId e : p.chosen_links) {
    if (e >= net.link_count()) throw IntegrityError("placement uses an unknown link");
    on[e] = 1;
  }
  const CoverageReport cov = verify_coverage(net, p.chosen_links);
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    const std::string od = detail::od_name(psi.ods[g]);
    if (!p.chosen_cuts[g]) {
      if (exactly_one) throw IntegrityError("no cut selected for od " + od);
      continue;
    }
    const auto& cl = psi.cuts.at(*p.chosen_cuts[g]).links;
    for (LinkId e : cl)
      if (!on[e]) throw IntegrityError("selected cut of od " + od + " is not fully sensored");
    if (!cov.is_covered(psi.ods[g])) throw IntegrityError("od " + od + " is not covered by the placement");
  }
}

inline SolverStats stats_from(SolveStatus status, std::size_t nodes, double dual_bound, double seconds,
                              std::vector<BoundPoint> trace) {
  return {to_string(status), nodes, dual_bound, seconds, std::move(trace)};
}

/// Degree-bound starting point: every OD takes the outflow cut of its origin
/// (or, failing that, the inflow cut of its destination) when the pool has it.
inline std::optional<std::vector<std::optional<CutId>>> boundary_choice(const Network& net,
                                                                        const PsiStructure& psi) {
  std::vector<std::optional<CutId>> pick(psi.ods.size());
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    const CutSet out = outflow_cut(net, psi.ods[g].origin);
    const CutSet in = inflow_cut(net, psi.ods[g].destination);
    for (std::size_t l : psi.groups[g]) {
      const CutSet& c = psi.cuts[psi.rows[l].cut];
      if (c == out) pick[g] = psi.rows[l].cut;
    }
    if (!pick[g]) {
      for (std::size_t l : psi.groups[g])
        if (psi.cuts[psi.rows[l].cut] == in) pick[g] = psi.rows[l].cut;
    }
    if (!pick[g]) return std::nullopt;
  }
  return pick;
}

/// Minimum-cost placement covering every pool OD with exactly one cut.
/// Throws InfeasibleError when some OD has no cut.
inline Placement solve_min_links(const Network& net, const CutPool& pool, const SolveOptions& options = {},
                                 const std::vector<double>& costs = {}) {
  for (std::size_t g = 0; g < pool.ods.size(); ++g)
    if (pool.membership[g].empty()) throw InfeasibleError("od " + detail::od_name(pool.ods[g]) + " has no cut");
  const PsiStructure psi = build_psi(net, pool, {}, costs);
  const IlpModel model = build_csp1(psi);
  SolveOptions opts = options;
  if (!opts.initial) {
    if (auto pick = boundary_choice(net, psi)) {
      std::vector<char> on(net.link_count(), 0);
      for (const auto& c : *pick)
        for (LinkId e : psi.cuts[*c].links) on[e] = 1;
      std::vector<LinkId> links;
      for (std::size_t e = 0; e < on.size(); ++e)
        if (on[e]) links.push_back(static_cast<LinkId>(e));
      opts.initial = assignment_from_choice(model, psi, links, *pick);
    }
  }
  const SolveResult r = solve(model, opts);
  if (r.status == SolveStatus::kInfeasible) throw InfeasibleError("min-links model is infeasible");
  Placement p = extract_placement(model, r.best, psi);
  p.stats = stats_from(r.status, r.nodes, r.dual_bound, r.seconds, r.bound_trace);
  check_placement(net, psi, p, true, std::nullopt);
  return p;
}

/// Budgeted coverage. `benefits` is per pool OD (uniform when empty).
inline Placement solve_max_coverage(const Network& net, const CutPool& pool, std::size_t budget,
                                    const SolveOptions& opts = {}, const std::vector<double>& benefits = {}) {
  Placement p;
  if (pool.total_rows() == 0) {
    p.chosen_cuts.assign(pool.ods.size(), std::nullopt);
    p.stats = stats_from(SolveStatus::kOptimal, 0, 0.0, 0.0, {});
    return p;
  }
  const PsiStructure psi = build_psi(net, pool, benefits);
  CoverageSearch search(net, psi, budget);
  CoverageSolution s = search.run(opts);
  p.chosen_cuts = assign_cuts(psi, s.links);
  // Links that close no selected cut add nothing; dropping them keeps the
  // placement minimal for its objective.
  std::vector<char> used(net.link_count(), 0);
  for (const auto& c : p.chosen_cuts)
    if (c)
      for (LinkId e : psi.cuts[*c].links) used[e] = 1;
  for (LinkId e : s.links)
    if (used[e]) p.chosen_links.push_back(e);
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    if (!p.chosen_cuts[g]) continue;
    p.covered_ods.push_back(psi.ods[g]);
    p.objective += psi.rows[psi.groups[g].front()].benefit;
  }
  if (std::abs(p.objective - s.objective) > 1e-6) throw IntegrityError("coverage value changed after assignment");
  p.stats = stats_from(s.status, s.nodes, s.dual_bound, s.seconds, std::move(s.bound_trace));
  check_placement(net, psi, p, false, budget);
  return p;
}

struct SharedCut {
  CutId cut = 0;
  std::vector<LinkId> links;
  std::size_t shared = 0;
  /// ODs whose only selectable cut within the placement is this one.
  std::size_t forced = 0;
  /// ODs that could be assigned this cut within the placement.
  std::size_t available = 0;
};

/// Selected cuts with the number of ODs assigned to each, most shared first
/// (ties by cut id). Rows below `min_shared` are dropped.
inline std::vector<SharedCut> shared_cuts(const PsiStructure& psi, const Placement& p, std::size_t min_shared = 1) {
  std::map<CutId, SharedCut> rows;
  for (const auto& c : p.chosen_cuts)
    if (c) rows[*c].shared += 1;
  std::vector<char> on(psi.col_count(), 0);
  for (LinkId e : p.chosen_links) on[e] = 1;
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    std::vector<CutId> inside;
    for (std::size_t l : psi.groups[g]) {
      const auto& cl = psi.cuts[psi.rows[l].cut].links;
      if (std::all_of(cl.begin(), cl.end(), [&](LinkId e) { return on[e] != 0; })) inside.push_back(psi.rows[l].cut);
    }
    for (CutId c : inside) {
      auto it = rows.find(c);
      if (it == rows.end()) continue;
      it->second.available += 1;
      if (inside.size() == 1) it->second.forced += 1;
    }
  }
  std::vector<SharedCut> out;
  for (auto& [c, row] : rows) {
    row.cut = c;
    row.links = psi.cuts[c].links;
    if (row.shared >= min_shared) out.push_back(row);
  }
  std::stable_sort(out.begin(), out.end(), [](const SharedCut& a, const SharedCut& b) { return a.shared > b.shared; });
  return out;
}

}  // namespace sclp

#endif  // SCLP_SOLVE_HPP_
