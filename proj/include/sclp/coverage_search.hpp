// SPDX-License-Identifier: Apache-2.0
//
// Branch and bound over link decisions for the budgeted coverage program
// (CSP2) on large cut pools.
//
// A node fixes some links in (sensor) or out. OD pairs are covered when a
// pool cut lies inside the fixed-in links, dead when every pool cut uses a
// fixed-out link or costs more than the remaining budget, and open
// otherwise. The open part is bounded by the path relaxation
//
//   max sum_w u_w th_w   s.t.  th_w <= x(P) for every s->t path P avoiding
//                              fixed-in links,  th_w <= 1,  sum x <= budget,
//
// which is what the SOS1-aggregated cut relaxation becomes when the pool
// holds every minimal cut; with a size cap it stays a valid upper bound. It
// is solved in its dual (multicommodity flow) form, whose rows are the open
// pairs and free links, by a revised simplex that prices path columns with
// Dijkstra. Every basis visited is dual feasible, so the running objective
// is already a bound and nodes can be cut off before the LP converges.

#ifndef SCLP_COVERAGE_SEARCH_HPP_
#define SCLP_COVERAGE_SEARCH_HPP_

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "sclp/bb_solver.hpp"
#include "sclp/csp_model.hpp"
#include "sclp/network.hpp"

namespace sclp {

struct CoverageSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<LinkId> links;
  double objective = 0.0;
  double dual_bound = 0.0;
  double root_bound = 0.0;
  std::size_t nodes = 0;
  double seconds = 0.0;
  std::vector<BoundPoint> bound_trace;
};

class CoverageSearch {
 public:
  CoverageSearch(const Network& net, const PsiStructure& psi, std::size_t budget)
      : net_(net), budget_(budget), links_(net.link_count()), words_((net.link_count() + 63) / 64) {
    masks_.assign(psi.cuts.size() * words_, 0);
    cut_size_.resize(psi.cuts.size());
    for (std::size_t c = 0; c < psi.cuts.size(); ++c) {
      for (LinkId e : psi.cuts[c].links) masks_[c * words_ + e / 64] |= std::uint64_t{1} << (e % 64);
      cut_size_[c] = psi.cuts[c].size();
    }
    groups_.resize(psi.ods.size());
    for (std::size_t g = 0; g < psi.ods.size(); ++g) {
      Group& gr = groups_[g];
      gr.origin = net.node_index(psi.ods[g].origin);
      gr.destination = net.node_index(psi.ods[g].destination);
      for (std::size_t l : psi.groups[g]) {
        gr.cuts.push_back(psi.rows[l].cut);
        gr.benefit = psi.rows[l].benefit;
      }
    }
    integral_ = true;
    for (const Group& gr : groups_) integral_ = integral_ && gr.benefit == std::round(gr.benefit);
  }

  /// Pool-based coverage value of a link set.
  double evaluate(const std::vector<LinkId>& links) const {
    const auto mask = to_mask(links);
    double v = 0.0;
    std::vector<std::int8_t> inside(cut_size_.size(), -1);
    for (const Group& gr : groups_) {
      for (CutId c : gr.cuts) {
        if (inside[c] < 0) inside[c] = subset(c, mask) ? 1 : 0;
        if (inside[c]) {
          v += gr.benefit;
          break;
        }
      }
    }
    return v;
  }

  /// Greedy cut packing: repeatedly add the cut with the best newly covered
  /// benefit per added link, starting from `start`, never using `banned`.
  std::vector<LinkId> greedy(std::vector<LinkId> start, const std::vector<char>& banned = {}) const {
    std::vector<std::uint64_t> x = to_mask(start);
    std::vector<std::uint64_t> ban(words_, 0);
    for (std::size_t e = 0; e < banned.size(); ++e)
      if (banned[e]) ban[e / 64] |= std::uint64_t{1} << (e % 64);
    std::size_t used = popcount(x);
    std::vector<double> score(cut_size_.size());
    while (used < budget_) {
      const std::size_t room = budget_ - used;
      std::fill(score.begin(), score.end(), 0.0);
      std::vector<std::int8_t> inside(cut_size_.size(), -1);
      for (const Group& gr : groups_) {
        bool covered = false;
        for (CutId c : gr.cuts) {
          if (inside[c] < 0) inside[c] = subset(c, x) ? 1 : 0;
          if (inside[c]) {
            covered = true;
            break;
          }
        }
        if (covered) continue;
        for (CutId c : gr.cuts) score[c] += gr.benefit;
      }
      std::size_t best = cut_size_.size();
      double best_ratio = 0.0;
      std::size_t best_cost = 0;
      for (std::size_t c = 0; c < cut_size_.size(); ++c) {
        if (score[c] <= 0.0 || intersects(c, ban)) continue;
        const std::size_t cost = extra_links(c, x);
        if (cost == 0 || cost > room) continue;
        const double ratio = score[c] / static_cast<double>(cost);
        if (ratio > best_ratio + 1e-12 || (std::abs(ratio - best_ratio) <= 1e-12 && cost < best_cost)) {
          best = c;
          best_ratio = ratio;
          best_cost = cost;
        }
      }
      if (best == cut_size_.size()) break;
      for (std::size_t k = 0; k < words_; ++k) x[k] |= masks_[best * words_ + k];
      used = popcount(x);
    }
    return from_mask(x);
  }

  CoverageSolution run(const SolveOptions& opts = {}, std::vector<LinkId> warm = {}) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    CoverageSolution sol;
    best_value_ = -1.0;
    auto offer = [&](std::vector<LinkId> links, std::size_t node, double bound) {
      if (links.size() > budget_) return;
      const double v = evaluate(links);
      if (v <= best_value_ + 1e-9) return;
      best_value_ = v;
      sol.links = std::move(links);
      sol.objective = v;
      sol.bound_trace.push_back({node, v, bound, elapsed()});
      if (opts.log) {
        std::cerr << "node " << node << " incumbent " << v << " bound " << bound << " elapsed " << elapsed()
                  << "s\n";
      }
    };
    double total = 0.0;
    for (const Group& gr : groups_) total += gr.benefit;
    offer({}, 0, total);
    if (!warm.empty()) offer(std::move(warm), 0, total);
    offer(greedy({}), 0, total);

    struct Node {
      std::vector<std::pair<LinkId, std::int8_t>> fix;
      double bound = 0.0;
      std::size_t depth = 0;
      std::size_t order = 0;
    };
    auto worse = [](const Node& a, const Node& b) {
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.order > b.order;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
    std::size_t order = 0;
    std::optional<Node> next = Node{{}, total, 0, order++};
    bool limit_hit = false;

    while (next || !open.empty()) {
      Node node;
      if (next) {
        node = std::move(*next);
        next.reset();
      } else {
        node = open.top();
        open.pop();
      }
      if (prunable(node.bound, opts.gap_tol)) continue;
      if ((opts.node_limit && sol.nodes >= *opts.node_limit) ||
          (opts.time_limit_seconds && elapsed() > *opts.time_limit_seconds)) {
        open.push(std::move(node));
        limit_hit = true;
        break;
      }
      ++sol.nodes;

      std::vector<std::int8_t> status(links_, -1);
      for (auto [e, v] : node.fix) status[e] = v;
      NodeEval ev = classify(status);
      std::vector<LinkId> in_links;
      for (std::size_t e = 0; e < links_; ++e)
        if (status[e] == 1) in_links.push_back(static_cast<LinkId>(e));
      if (ev.open.empty() || ev.remaining == 0) {
        offer(in_links, sol.nodes, ev.covered_value);
        if (node.depth == 0) sol.root_bound = ev.covered_value;
        continue;
      }
      double open_total = 0.0;
      for (std::size_t g : ev.open) open_total += groups_[g].benefit;
      if (prunable(ev.covered_value + open_total, opts.gap_tol)) continue;

      const double cutoff = best_value_ - ev.covered_value + opts.gap_tol;
      PathLpResult lp = solve_path_lp(status, ev, integral_ ? std::floor(cutoff + 1e-9) + 1.0 - 1e-6 : cutoff);
      double bound = std::min(node.bound, ev.covered_value + lp.value);
      if (node.depth == 0) sol.root_bound = bound;
      if (prunable(bound, opts.gap_tol)) continue;

      // Rounding: the largest x values within the budget, then greedy fill.
      std::vector<std::pair<double, LinkId>> ranked;
      for (std::size_t e = 0; e < links_; ++e) {
        if (status[e] == -1 && lp.x[e] > 1e-6) ranked.emplace_back(-lp.x[e], static_cast<LinkId>(e));
      }
      std::sort(ranked.begin(), ranked.end());
      std::vector<LinkId> rounded = in_links;
      for (std::size_t k = 0; k < ranked.size() && rounded.size() < budget_; ++k) rounded.push_back(ranked[k].second);
      std::sort(rounded.begin(), rounded.end());
      std::vector<char> banned(links_, 0);
      for (std::size_t e = 0; e < links_; ++e) banned[e] = status[e] == 0;
      offer(greedy(rounded, banned), sol.nodes, bound);
      offer(greedy(in_links, banned), sol.nodes, bound);
      if (prunable(bound, opts.gap_tol)) continue;

      const std::optional<LinkId> pick = choose_branch(status, ev, lp);
      if (!pick) continue;
      Node in_child{node.fix, bound, node.depth + 1, order++};
      Node out_child{node.fix, bound, node.depth + 1, order++};
      in_child.fix.emplace_back(*pick, 1);
      out_child.fix.emplace_back(*pick, 0);
      open.push(std::move(out_child));
      next = std::move(in_child);
    }

    sol.seconds = elapsed();
    if (limit_hit) {
      double bound = best_value_;
      if (next) open.push(std::move(*next));
      while (!open.empty()) {
        bound = std::max(bound, open.top().bound);
        open.pop();
      }
      sol.dual_bound = bound;
      sol.status = SolveStatus::kBudgetLimitHit;
    } else {
      sol.dual_bound = sol.objective;
      sol.status = SolveStatus::kOptimal;
    }
    std::sort(sol.links.begin(), sol.links.end());
    return sol;
  }

  /// Root path-relaxation value (no fixings).
  double root_relaxation() {
    std::vector<std::int8_t> status(links_, -1);
    NodeEval ev = classify(status);
    if (ev.open.empty() || ev.remaining == 0) return ev.covered_value;
    return ev.covered_value + solve_path_lp(status, ev, -1.0).value;
  }

 private:
  struct Group {
    std::size_t origin = 0, destination = 0;
    double benefit = 1.0;
    std::vector<CutId> cuts;
  };

  struct NodeEval {
    double covered_value = 0.0;
    std::size_t remaining = 0;
    std::vector<std::size_t> open;
    /// Per open group, the cheapest available cut (for fallback branching).
    std::vector<CutId> cheapest;
  };

  struct PathLpResult {
    double value = 0.0;
    std::vector<double> x;      // per link
    std::vector<double> theta;  // per open group (position in NodeEval::open)
  };

  struct PathColumn {
    std::size_t group = 0;
    std::vector<LinkId> links;
  };

  bool prunable(double bound, double gap) const {
    if (best_value_ < 0) return false;
    const double b = integral_ ? std::floor(bound + 1e-6) : bound;
    return b <= best_value_ + gap + 1e-9;
  }

  std::vector<std::uint64_t> to_mask(const std::vector<LinkId>& links) const {
    std::vector<std::uint64_t> m(words_, 0);
    for (LinkId e : links) m[e / 64] |= std::uint64_t{1} << (e % 64);
    return m;
  }
  std::vector<LinkId> from_mask(const std::vector<std::uint64_t>& m) const {
    std::vector<LinkId> out;
    for (std::size_t e = 0; e < links_; ++e)
      if ((m[e / 64] >> (e % 64)) & 1U) out.push_back(static_cast<LinkId>(e));
    return out;
  }
  static std::size_t popcount(const std::vector<std::uint64_t>& m) {
    std::size_t n = 0;
    for (auto w : m) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool subset(std::size_t c, const std::vector<std::uint64_t>& m) const {
    for (std::size_t k = 0; k < words_; ++k)
      if (masks_[c * words_ + k] & ~m[k]) return false;
    return true;
  }
  bool intersects(std::size_t c, const std::vector<std::uint64_t>& m) const {
    for (std::size_t k = 0; k < words_; ++k)
      if (masks_[c * words_ + k] & m[k]) return true;
    return false;
  }
  std::size_t extra_links(std::size_t c, const std::vector<std::uint64_t>& m) const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_; ++k)
      n += static_cast<std::size_t>(std::popcount(masks_[c * words_ + k] & ~m[k]));
    return n;
  }

  NodeEval classify(const std::vector<std::int8_t>& status) const {
    std::vector<std::uint64_t> in(words_, 0), out(words_, 0);
    std::size_t used = 0;
    for (std::size_t e = 0; e < links_; ++e) {
      if (status[e] == 1) {
        in[e / 64] |= std::uint64_t{1} << (e % 64);
        ++used;
      } else if (status[e] == 0) {
        out[e / 64] |= std::uint64_t{1} << (e % 64);
      }
    }
    NodeEval ev;
    ev.remaining = used >= budget_ ? 0 : budget_ - used;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const Group& gr = groups_[g];
      bool covered = false;
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      CutId best_cut = 0;
      for (CutId c : gr.cuts) {
        if (intersects(c, out)) continue;
        const std::size_t cost = extra_links(c, in);
        if (cost == 0) {
          covered = true;
          break;
        }
        if (cost < best_cost) {
          best_cost = cost;
          best_cut = c;
        }
      }
      if (covered) {
        ev.covered_value += gr.benefit;
      } else if (best_cost <= ev.remaining && gr.benefit > 0) {
        ev.open.push_back(g);
        ev.cheapest.push_back(best_cut);
      }
    }
    return ev;
  }

  std::optional<LinkId> choose_branch(const std::vector<std::int8_t>& status, const NodeEval& ev,
                                      const PathLpResult& lp) const {
    std::optional<LinkId> pick;
    double best = 1e-6;
    for (std::size_t e = 0; e < links_; ++e) {
      if (status[e] != -1) continue;
      const double v = lp.x[e];
      if (v < 1.0 - 1e-6 && v > best) {
        best = v;
        pick = static_cast<LinkId>(e);
      }
    }
    if (pick) return pick;
    for (std::size_t e = 0; e < links_; ++e)
      if (status[e] == -1 && lp.x[e] >= 1.0 - 1e-6) return static_cast<LinkId>(e);
    // x is zero on every free link: open pairs already separated by fixed-in
    // links but lacking a pool cut. Grow the cheapest cut of the most
    // valuable such pair.
    std::size_t best_pos = ev.open.size();
    for (std::size_t p = 0; p < ev.open.size(); ++p) {
      if (lp.theta[p] <= 1e-6) continue;
      if (best_pos == ev.open.size() || groups_[ev.open[p]].benefit > groups_[ev.open[best_pos]].benefit) {
        best_pos = p;
      }
    }
    if (best_pos == ev.open.size()) return std::nullopt;
    const CutId c = ev.cheapest[best_pos];
    for (std::size_t e = 0; e < links_; ++e) {
      if (status[e] == -1 && ((masks_[c * words_ + e / 64] >> (e % 64)) & 1U)) return static_cast<LinkId>(e);
    }
    return std::nullopt;
  }

  // Revised simplex on the flow dual. Column kinds: surplus per row, mu per
  // open pair (cost 1), sigma per free link (cost 1), lambda (cost =
  // remaining budget) and path columns from the pool.
  PathLpResult solve_path_lp(const std::vector<std::int8_t>& status, const NodeEval& ev, double cutoff) {
    const std::size_t n_od = ev.open.size();
    std::vector<std::size_t> link_row(links_, SIZE_MAX);
    std::vector<LinkId> free_links;
    for (std::size_t e = 0; e < links_; ++e) {
      if (status[e] == -1) {
        link_row[e] = n_od + free_links.size();
        free_links.push_back(static_cast<LinkId>(e));
      }
    }
    const std::size_t m = n_od + free_links.size();
    std::vector<std::size_t> od_row(groups_.size(), SIZE_MAX);
    for (std::size_t p = 0; p < n_od; ++p) od_row[ev.open[p]] = p;
    const double lambda_cost = static_cast<double>(ev.remaining);

    // Column ids: [0, m) surplus, [m, m + n_od) mu, [m + n_od, 2m) sigma,
    // 2m lambda, 2m + 1 + k pool path k.
    const std::size_t kLambda = 2 * m;
    auto col_cost = [&](std::size_t id) -> double {
      if (id < m) return 0.0;
      if (id < 2 * m) return 1.0;
      if (id == kLambda) return lambda_cost;
      return 0.0;
    };
    std::vector<std::pair<std::size_t, double>> colbuf;
    auto column = [&](std::size_t id) -> const std::vector<std::pair<std::size_t, double>>& {
      colbuf.clear();
      if (id < m) {
        colbuf.emplace_back(id, -1.0);
      } else if (id < 2 * m) {
        colbuf.emplace_back(id - m, 1.0);
      } else if (id == kLambda) {
        for (std::size_t r = n_od; r < m; ++r) colbuf.emplace_back(r, 1.0);
      } else {
        const PathColumn& pc = pool_[id - kLambda - 1];
        colbuf.emplace_back(od_row[pc.group], 1.0);
        for (LinkId e : pc.links)
          if (link_row[e] != SIZE_MAX) colbuf.emplace_back(link_row[e], -1.0);
      }
      return colbuf;
    };
    // Valid pool columns at this node: open group, no fixed-in link.
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < pool_.size(); ++k) {
      const PathColumn& pc = pool_[k];
      if (od_row[pc.group] == SIZE_MAX) continue;
      bool ok = true;
      for (LinkId e : pc.links) ok = ok && status[e] != 1;
      if (ok) active.push_back(kLambda + 1 + k);
    }

    // Initial basis: mu for pair rows, surplus for link rows.
    std::vector<std::size_t> basis(m);
    std::vector<double> binv(m * m, 0.0), xb(m, 0.0), rhs(m, 0.0);
    for (std::size_t p = 0; p < n_od; ++p) {
      basis[p] = m + p;
      binv[p * m + p] = 1.0;
      rhs[p] = groups_[ev.open[p]].benefit;
      xb[p] = rhs[p];
    }
    for (std::size_t r = n_od; r < m; ++r) {
      basis[r] = r;
      binv[r * m + r] = -1.0;
    }
    std::vector<char> in_basis_flag(2 * m + 1 + pool_.size() + 4096, 0);
    auto mark = [&](std::size_t id, char v) {
      if (id >= in_basis_flag.size()) in_basis_flag.resize(id + 1024, 0);
      in_basis_flag[id] = v;
    };
    for (std::size_t id : basis) mark(id, 1);

    std::vector<double> y(m), d(m);
    auto compute_duals = [&] {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        const double cb = col_cost(basis[i]);
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) y[j] += cb * binv[i * m + j];
      }
    };
    auto reduced = [&](std::size_t id) {
      double rc = col_cost(id);
      for (auto [r, v] : column(id)) rc -= y[r] * v;
      return rc;
    };
    auto objective = [&] {
      double v = 0.0;
      for (std::size_t i = 0; i < m; ++i) v += col_cost(basis[i]) * xb[i];
      return v;
    };
    auto refactor = [&] {
      std::vector<double> bmat(m * m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (auto [r, v] : column(basis[i])) bmat[r * m + i] = v;
      std::fill(binv.begin(), binv.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) binv[i * m + i] = 1.0;
      for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r)
          if (std::abs(bmat[r * m + c]) > std::abs(bmat[piv * m + c])) piv = r;
        if (std::abs(bmat[piv * m + c]) < 1e-12) return false;
        if (piv != c) {
          for (std::size_t j = 0; j < m; ++j) {
            std::swap(bmat[c * m + j], bmat[piv * m + j]);
            std::swap(binv[c * m + j], binv[piv * m + j]);
          }
        }
        const double p = bmat[c * m + c];
        for (std::size_t j = 0; j < m; ++j) {
          bmat[c * m + j] /= p;
          binv[c * m + j] /= p;
        }
        for (std::size_t r = 0; r < m; ++r) {
          if (r == c) continue;
          const double f = bmat[r * m + c];
          if (f == 0.0) continue;
          for (std::size_t j = 0; j < m; ++j) {
            bmat[r * m + j] -= f * bmat[c * m + j];
            binv[r * m + j] -= f * binv[c * m + j];
          }
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) v += binv[i * m + j] * rhs[j];
        xb[i] = std::max(0.0, v);
      }
      return true;
    };

    // Dijkstra pricing: one new path column per open pair whose shortest
    // path (free links weighted by y, fixed-out links free of charge) is
    // shorter than its pair dual.
    auto price_paths = [&](std::vector<std::size_t>& fresh) {
      fresh.clear();
      std::vector<std::vector<std::size_t>> by_origin(net_.node_count());
      for (std::size_t p = 0; p < n_od; ++p) by_origin[groups_[ev.open[p]].origin].push_back(p);
      std::vector<double> dist(net_.node_count());
      std::vector<LinkId> pred(net_.node_count());
      for (std::size_t s = 0; s < net_.node_count(); ++s) {
        if (by_origin[s].empty()) continue;
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
          auto [du, u] = heap.top();
          heap.pop();
          if (du > dist[u]) continue;
          for (LinkId e : net_.out_links_of_index(u)) {
            if (status[e] == 1) continue;
            const double w = status[e] == 0 ? 0.0 : std::max(0.0, y[link_row[e]]);
            const std::size_t v = net_.head_index(e);
            if (du + w < dist[v] - 1e-15) {
              dist[v] = du + w;
              pred[v] = e;
              heap.emplace(dist[v], v);
            }
          }
        }
        for (std::size_t p : by_origin[s]) {
          const std::size_t t = groups_[ev.open[p]].destination;
          if (!(dist[t] < y[p] - 1e-9)) continue;
          PathColumn pc{ev.open[p], {}};
          for (std::size_t v = t; v != s; v = net_.tail_index(pred[v])) pc.links.push_back(pred[v]);
          std::sort(pc.links.begin(), pc.links.end());
          pool_.push_back(std::move(pc));
          const std::size_t id = kLambda + pool_.size();
          active.push_back(id);
          fresh.push_back(id);
        }
      }
    };

    PathLpResult res;
    std::size_t degenerate = 0, since_refactor = 0;
    std::vector<std::size_t> fresh;
    for (std::size_t iter = 0; iter < 200000; ++iter) {
      compute_duals();
      const double obj = objective();
      if (cutoff >= 0 && obj <= cutoff) break;  // already dominated by the incumbent
      const bool bland = degenerate > 30;
      std::size_t q = SIZE_MAX;
      double best_rc = -1e-9;
      auto consider = [&](std::size_t id) {
        if (id < in_basis_flag.size() && in_basis_flag[id]) return false;
        const double rc = reduced(id);
        if (rc < best_rc) {
          q = id;
          best_rc = rc;
          return bland;
        }
        return false;
      };
      bool stop = false;
      for (std::size_t id = 0; id <= kLambda && !stop; ++id) stop = consider(id);
      for (std::size_t k = 0; k < active.size() && !stop; ++k) stop = consider(active[k]);
      if (q == SIZE_MAX) {
        price_paths(fresh);
        for (std::size_t id : fresh) {
          mark(id, 0);
          if (consider(id)) break;
        }
      }
      if (q == SIZE_MAX) break;  // optimal

      // Ratio test on the entering column.
      const auto& a = column(q);
      std::vector<double> dir(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (auto [r, val] : a) v += binv[i * m + r] * val;
        dir[i] = v;
      }
      std::size_t leave = SIZE_MAX;
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (dir[i] <= 1e-9) continue;
        const double ratio = xb[i] / dir[i];
        const bool better = ratio < theta - 1e-12 ||
                            (ratio <= theta + 1e-12 && leave != SIZE_MAX &&
                             (bland ? basis[i] < basis[leave] : dir[i] > dir[leave]));
        if (better) {
          theta = ratio;
          leave = i;
        }
      }
      if (leave == SIZE_MAX) break;  // cannot happen: costs are nonnegative
      degenerate = theta < 1e-12 ? degenerate + 1 : 0;
      for (std::size_t i = 0; i < m; ++i) xb[i] = std::max(0.0, xb[i] - theta * dir[i]);
      xb[leave] = theta;
      const double p = dir[leave];
      for (std::size_t j = 0; j < m; ++j) binv[leave * m + j] /= p;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || dir[i] == 0.0) continue;
        const double f = dir[i];
        for (std::size_t j = 0; j < m; ++j) binv[i * m + j] -= f * binv[leave * m + j];
      }
      mark(basis[leave], 0);
      basis[leave] = q;
      mark(q, 1);
      if (++since_refactor >= 100) {
        since_refactor = 0;
        if (!refactor()) break;
      }
    }
    compute_duals();
    res.value = objective();
    res.x.assign(links_, 0.0);
    for (std::size_t k = 0; k < free_links.size(); ++k) res.x[free_links[k]] = std::clamp(y[n_od + k], 0.0, 1.0);
    res.theta.resize(n_od);
    for (std::size_t p = 0; p < n_od; ++p) res.theta[p] = std::clamp(y[p], 0.0, 1.0);
    if (pool_.size() > 200000) pool_.clear();
    return res;
  }

  const Network& net_;
  std::size_t budget_;
  std::size_t links_;
  std::size_t words_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::size_t> cut_size_;
  std::vector<Group> groups_;
  std::vector<PathColumn> pool_;
  bool integral_ = true;
  double best_value_ = -1.0;
};

}  // namespace sclp

#endif  // SCLP_COVERAGE_SEARCH_HPP_
