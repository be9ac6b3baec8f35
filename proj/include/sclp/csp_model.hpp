// SPDX-License-Identifier: Apache-2.0
//
// Bipartite selection structure (cut rows against link columns) and the 0-1
// programs built on it: CSP0 (benefit minus cost), CSP1 (cover every OD pair
// with the fewest links) and CSP2 (cover the most OD pairs within a budget).

#ifndef SCLP_CSP_MODEL_HPP_
#define SCLP_CSP_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sclp/cut_enum.hpp"
#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

struct PsiRow {
  std::size_t group = 0;  // index into PsiStructure::ods
  CutId cut = 0;
  double benefit = 1.0;
};

/// Rows are (OD, cut) selection candidates, columns are links. The arcs of
/// row l are exactly the links of its cut.
struct PsiStructure {
  std::vector<OdPair> ods;
  std::vector<CutSet> cuts;  // copy of the pool's interned cuts
  std::vector<PsiRow> rows;
  std::vector<double> link_costs;
  /// groups[g] lists the row ids of ods[g], ascending.
  std::vector<std::vector<std::size_t>> groups;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return link_costs.size(); }
  const std::vector<LinkId>& arcs(std::size_t row) const { return cuts[rows[row].cut].links; }
  std::size_t arc_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += cuts[r.cut].size();
    return n;
  }
};

/// `benefits` is per OD of the pool (uniform 1 when empty), `costs` per link
/// (uniform 1 when empty).
inline PsiStructure build_psi(const Network& net, const CutPool& pool, const std::vector<double>& benefits = {},
                              const std::vector<double>& costs = {}) {
  if (pool.ods.empty() || pool.total_rows() == 0) throw InputError("cut pool is empty");
  if (!benefits.empty() && benefits.size() != pool.ods.size()) {
    throw InputError("expected one benefit per OD pair");
  }
  if (!costs.empty() && costs.size() != net.link_count()) throw InputError("expected one cost per link");
  for (double u : benefits)
    if (!(u >= 0) || !std::isfinite(u)) throw InputError("benefits must be finite and nonnegative");
  for (double t : costs)
    if (!(t >= 0) || !std::isfinite(t)) throw InputError("costs must be finite and nonnegative");

  PsiStructure psi;
  psi.ods = pool.ods;
  psi.cuts = pool.cuts;
  psi.link_costs = costs.empty() ? std::vector<double>(net.link_count(), 1.0) : costs;
  psi.groups.resize(pool.ods.size());
  for (std::size_t g = 0; g < pool.ods.size(); ++g) {
    for (CutId c : pool.membership[g]) {
      if (pool.cuts[c].links.back() >= net.link_count()) throw InputError("pool does not match network");
      psi.groups[g].push_back(psi.rows.size());
      psi.rows.push_back({g, c, benefits.empty() ? 1.0 : benefits[g]});
    }
  }
  return psi;
}

enum class Sense { kMinimize, kMaximize };
enum class Cmp { kLe, kEq, kGe };
enum class CspKind { kCsp0, kCsp1, kCsp2, kOther };

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Cmp cmp = Cmp::kLe;
  double rhs = 0.0;
};

/// Pure 0-1 program. For CSP models, variables 0..y_count-1 are the row
/// selections y_l and the following link_count variables are x_r.
struct IlpModel {
  Sense sense = Sense::kMinimize;
  CspKind kind = CspKind::kOther;
  std::vector<std::string> names;
  std::vector<double> objective;
  /// Higher values are branched on first.
  std::vector<int> branch_priority;
  std::vector<Constraint> constraints;
  std::vector<std::vector<std::size_t>> sos1;
  std::size_t y_count = 0;
  std::size_t x_count = 0;

  std::size_t var_count() const { return objective.size(); }

  std::size_t add_var(std::string name, double obj, int priority = 0) {
    names.push_back(std::move(name));
    objective.push_back(obj);
    branch_priority.push_back(priority);
    return objective.size() - 1;
  }

  void add_constraint(std::vector<Term> terms, Cmp cmp, double rhs) {
    for (const Term& t : terms) {
      if (t.var >= var_count()) throw InputError("constraint references an undeclared variable");
    }
    constraints.push_back({std::move(terms), cmp, rhs});
  }
};

using Assignment = std::vector<std::uint8_t>;

/// Objective value of a 0-1 assignment.
inline double evaluate_objective(const IlpModel& m, const Assignment& a) {
  double v = 0.0;
  for (std::size_t j = 0; j < m.var_count(); ++j)
    if (a[j]) v += m.objective[j];
  return v;
}

/// Index of the first violated constraint or SOS1 group (offset by the
/// constraint count), or nullopt when the assignment is feasible.
inline std::optional<std::size_t> first_violation(const IlpModel& m, const Assignment& a, double tol = 1e-9) {
  if (a.size() != m.var_count()) return std::size_t{0};
  for (std::size_t i = 0; i < m.constraints.size(); ++i) {
    const Constraint& c = m.constraints[i];
    double lhs = 0.0;
    for (const Term& t : c.terms)
      if (a[t.var]) lhs += t.coef;
    const bool ok = c.cmp == Cmp::kLe ? lhs <= c.rhs + tol
                    : c.cmp == Cmp::kGe ? lhs >= c.rhs - tol
                                        : std::abs(lhs - c.rhs) <= tol;
    if (!ok) return i;
  }
  for (std::size_t g = 0; g < m.sos1.size(); ++g) {
    int ones = 0;
    for (std::size_t v : m.sos1[g]) ones += a[v] ? 1 : 0;
    if (ones > 1) return m.constraints.size() + g;
  }
  return std::nullopt;
}

namespace detail {

inline IlpModel psi_skeleton(const PsiStructure& psi, Sense sense, CspKind kind) {
  IlpModel m;
  m.sense = sense;
  m.kind = kind;
  m.y_count = psi.row_count();
  m.x_count = psi.col_count();
  for (std::size_t l = 0; l < psi.row_count(); ++l) m.add_var("y" + std::to_string(l), 0.0, 1);
  for (std::size_t r = 0; r < psi.col_count(); ++r) m.add_var("x" + std::to_string(r), 0.0, 0);
  for (std::size_t l = 0; l < psi.row_count(); ++l) {
    for (LinkId r : psi.arcs(l)) m.add_constraint({{l, 1.0}, {m.y_count + r, -1.0}}, Cmp::kLe, 0.0);
  }
  return m;
}

inline void add_groups(IlpModel& m, const PsiStructure& psi, Cmp cmp) {
  for (std::size_t g = 0; g < psi.groups.size(); ++g) {
    std::vector<Term> terms;
    for (std::size_t l : psi.groups[g]) terms.push_back({l, 1.0});
    m.add_constraint(std::move(terms), cmp, 1.0);
    m.sos1.push_back(psi.groups[g]);
  }
}

inline std::string od_name(const OdPair& w) {
  return "(" + std::to_string(w.origin) + "," + std::to_string(w.destination) + ")";
}

}  // namespace detail

/// max sum u_l y_l - sum t_r x_r, closure arcs, at most one cut per OD.
inline IlpModel build_csp0(const PsiStructure& psi) {
  IlpModel m = detail::psi_skeleton(psi, Sense::kMaximize, CspKind::kCsp0);
  for (std::size_t l = 0; l < psi.row_count(); ++l) m.objective[l] = psi.rows[l].benefit;
  for (std::size_t r = 0; r < psi.col_count(); ++r) m.objective[m.y_count + r] = -psi.link_costs[r];
  detail::add_groups(m, psi, Cmp::kLe);
  return m;
}

/// min sum t_r x_r, closure arcs, exactly one cut per OD. With `link_cutoff`
/// the number of selected links is additionally capped.
inline IlpModel build_csp1(const PsiStructure& psi, std::optional<std::size_t> link_cutoff = std::nullopt) {
  for (std::size_t g = 0; g < psi.groups.size(); ++g) {
    if (psi.groups[g].empty()) throw InfeasibleError("od " + detail::od_name(psi.ods[g]) + " has no cut");
  }
  IlpModel m = detail::psi_skeleton(psi, Sense::kMinimize, CspKind::kCsp1);
  for (std::size_t r = 0; r < psi.col_count(); ++r) m.objective[m.y_count + r] = psi.link_costs[r];
  detail::add_groups(m, psi, Cmp::kEq);
  if (link_cutoff) {
    std::vector<Term> terms;
    for (std::size_t r = 0; r < psi.col_count(); ++r) terms.push_back({m.y_count + r, 1.0});
    m.add_constraint(std::move(terms), Cmp::kLe, static_cast<double>(*link_cutoff));
  }
  return m;
}

/// max sum u_l y_l, closure arcs, at most one cut per OD, at most K links.
inline IlpModel build_csp2(const PsiStructure& psi, std::size_t budget) {
  IlpModel m = detail::psi_skeleton(psi, Sense::kMaximize, CspKind::kCsp2);
  for (std::size_t l = 0; l < psi.row_count(); ++l) m.objective[l] = psi.rows[l].benefit;
  detail::add_groups(m, psi, Cmp::kLe);
  std::vector<Term> terms;
  for (std::size_t r = 0; r < psi.col_count(); ++r) terms.push_back({m.y_count + r, 1.0});
  m.add_constraint(std::move(terms), Cmp::kLe, static_cast<double>(budget));
  return m;
}

struct BoundPoint {
  std::size_t node = 0;
  double incumbent = 0.0;
  double bound = 0.0;
  double seconds = 0.0;
};

struct SolverStats {
  std::string status;
  std::size_t nodes = 0;
  double dual_bound = 0.0;
  double seconds = 0.0;
  std::vector<BoundPoint> bound_trace;
};

struct Placement {
  std::vector<LinkId> chosen_links;
  /// Parallel to PsiStructure::ods.
  std::vector<std::optional<CutId>> chosen_cuts;
  double objective = 0.0;
  std::vector<OdPair> covered_ods;
  SolverStats stats;
};

/// Checks the assignment against every constraint and builds the placement.
/// Throws IntegrityError on any violation.
inline Placement extract_placement(const IlpModel& model, const Assignment& a, const PsiStructure& psi) {
  if (a.size() != model.var_count()) throw IntegrityError("assignment size does not match the model");
  if (model.y_count != psi.row_count() || model.x_count != psi.col_count()) {
    throw IntegrityError("model was not built from this structure");
  }
  for (auto v : a)
    if (v > 1) throw IntegrityError("assignment is not binary");
  if (auto bad = first_violation(model, a)) {
    throw IntegrityError("assignment violates constraint " + std::to_string(*bad));
  }
  Placement p;
  p.chosen_cuts.assign(psi.ods.size(), std::nullopt);
  for (std::size_t r = 0; r < model.x_count; ++r)
    if (a[model.y_count + r]) p.chosen_links.push_back(static_cast<LinkId>(r));
  for (std::size_t l = 0; l < model.y_count; ++l) {
    if (!a[l]) continue;
    const std::size_t g = psi.rows[l].group;
    if (p.chosen_cuts[g]) throw IntegrityError("two cuts selected for od " + detail::od_name(psi.ods[g]));
    p.chosen_cuts[g] = psi.rows[l].cut;
  }
  for (std::size_t g = 0; g < psi.ods.size(); ++g)
    if (p.chosen_cuts[g]) p.covered_ods.push_back(psi.ods[g]);
  p.objective = evaluate_objective(model, a);
  return p;
}

/// Builds the CSP assignment for a link set: each OD takes the chosen cut
/// from `pick` (or none), x is the link set. The CSP1 equality groups are the
/// caller's responsibility.
inline Assignment assignment_from_choice(const IlpModel& model, const PsiStructure& psi,
                                         const std::vector<LinkId>& links,
                                         const std::vector<std::optional<CutId>>& pick) {
  Assignment a(model.var_count(), 0);
  for (LinkId r : links) a.at(model.y_count + r) = 1;
  for (std::size_t g = 0; g < psi.groups.size(); ++g) {
    if (!pick[g]) continue;
    for (std::size_t l : psi.groups[g]) {
      if (psi.rows[l].cut == *pick[g]) {
        a[l] = 1;
        break;
      }
    }
  }
  return a;
}

/// Writes the model in the common LP text format (objective, constraints,
/// binaries and SOS1 sections).
inline void write_lp_format(const IlpModel& m, std::ostream& out) {
  auto number = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  auto write_terms = [&](const std::vector<Term>& terms) {
    std::size_t on_line = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const double c = terms[k].coef;
      out << (c < 0 ? " - " : " + ") << number(std::abs(c)) << ' ' << m.names[terms[k].var];
      if (++on_line == 8 && k + 1 < terms.size()) {
        out << "\n   ";
        on_line = 0;
      }
    }
    if (terms.empty()) out << " 0 " << (m.names.empty() ? "x0" : m.names[0]);
  };
  out << (m.sense == Sense::kMinimize ? "Minimize\n" : "Maximize\n") << " obj:";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < m.var_count(); ++j)
    if (m.objective[j] != 0.0) obj.push_back({j, m.objective[j]});
  write_terms(obj);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < m.constraints.size(); ++i) {
    const Constraint& c = m.constraints[i];
    out << " c" << i << ':';
    write_terms(c.terms);
    out << (c.cmp == Cmp::kLe ? " <= " : c.cmp == Cmp::kGe ? " >= " : " = ") << number(c.rhs) << '\n';
  }
  out << "Binaries\n";
  for (std::size_t j = 0; j < m.var_count(); ++j) out << ' ' << m.names[j] << ((j + 1) % 10 == 0 ? "\n" : "");
  out << '\n';
  if (!m.sos1.empty()) {
    out << "SOS\n";
    for (std::size_t g = 0; g < m.sos1.size(); ++g) {
      out << " s" << g << ": S1::";
      for (std::size_t k = 0; k < m.sos1[g].size(); ++k) out << ' ' << m.names[m.sos1[g][k]] << ':' << (k + 1);
      out << '\n';
    }
  }
  out << "End\n";
}

}  // namespace sclp

#endif  // SCLP_CSP_MODEL_HPP_
