// SPDX-License-Identifier: Apache-2.0
//
// Dense bounded-variable simplex for small and medium linear programs
//
//   min c'x  s.t.  A_i x (<=, =, >=) b_i,  lo <= x <= hi.
//
// Every row gets a logical (slack) variable, and artificials are added only
// for rows the slack basis cannot satisfy. After an optimal solve, bounds
// can be tightened and the problem reoptimised with the dual simplex from
// the same basis, which is how branch and bound uses it.

#ifndef SCLP_SIMPLEX_HPP_
#define SCLP_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "sclp/csp_model.hpp"

namespace sclp::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpProblem {
  std::vector<double> cost;
  std::vector<double> lower, upper;
  std::vector<Constraint> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

class DenseSimplex {
 public:
  explicit DenseSimplex(const LpProblem& p) { load(p); }

  /// Two-phase primal simplex from the current slack/artificial basis.
  LpStatus solve() {
    if (art_count_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = n_ + m_; j < cols_; ++j) phase1[j] = 1.0;
      price(phase1);
      const LpStatus s = primal_loop();
      if (s != LpStatus::kOptimal) return s;
      double infeas = 0.0;
      for (std::size_t j = n_ + m_; j < cols_; ++j) infeas += x_[j];
      if (infeas > 1e-7) return LpStatus::kInfeasible;
      evict_artificials();
    }
    price(cost_);
    return primal_loop();
  }

  /// Tightens or sets the bounds of a structural variable. Call reoptimize()
  /// afterwards.
  void set_bounds(std::size_t j, double lo, double hi) {
    lo_[j] = lo;
    hi_[j] = hi;
  }

  /// Restores optimality after bound changes, starting from an optimal basis.
  LpStatus reoptimize() {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (in_basis_[j]) continue;
      double target;
      if (lo_[j] == hi_[j]) {
        target = lo_[j];
      } else if (d_[j] > kOptTol) {
        target = lo_[j];
      } else if (d_[j] < -kOptTol) {
        target = hi_[j];
      } else {
        target = std::isfinite(lo_[j]) ? lo_[j] : (std::isfinite(hi_[j]) ? hi_[j] : 0.0);
        if (x_[j] >= lo_[j] && x_[j] <= hi_[j] && (x_[j] == lo_[j] || x_[j] == hi_[j])) target = x_[j];
      }
      if (!std::isfinite(target)) return solve_from_scratch();
      x_[j] = target;
    }
    recompute_basics();
    const LpStatus s = dual_loop();
    if (s != LpStatus::kOptimal) return s;
    return primal_loop();
  }

  double objective() const {
    double v = 0.0;
    for (std::size_t j = 0; j < n_; ++j) v += cost_[j] * x_[j];
    return v;
  }

  std::vector<double> primal() const { return {x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_)}; }
  std::size_t iterations() const { return iterations_; }

 private:
  static constexpr double kFeasTol = 1e-9;
  static constexpr double kOptTol = 1e-9;
  static constexpr double kPivTol = 1e-9;

  double& t(std::size_t i, std::size_t j) { return tab_[i * stride_ + j]; }
  double t(std::size_t i, std::size_t j) const { return tab_[i * stride_ + j]; }

  void load(const LpProblem& p) {
    original_ = p;
    n_ = p.cost.size();
    m_ = p.rows.size();
    // Decide which rows need an artificial before sizing the tableau.
    std::vector<double> activity(m_, 0.0);
    std::vector<double> start(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      start[j] = std::isfinite(p.lower[j]) ? p.lower[j] : (std::isfinite(p.upper[j]) ? p.upper[j] : 0.0);
    }
    for (std::size_t i = 0; i < m_; ++i)
      for (const Term& tm : p.rows[i].terms) activity[i] += tm.coef * start[tm.var];
    std::vector<double> slack_lo(m_), slack_hi(m_), residual(m_);
    art_count_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Constraint& c = p.rows[i];
      slack_lo[i] = c.cmp == Cmp::kGe ? -kInf : 0.0;
      slack_hi[i] = c.cmp == Cmp::kLe ? kInf : 0.0;
      residual[i] = c.rhs - activity[i];
      if (residual[i] < slack_lo[i] - kFeasTol || residual[i] > slack_hi[i] + kFeasTol) ++art_count_;
    }
    cols_ = n_ + m_ + art_count_;
    stride_ = cols_;
    tab_.assign(m_ * stride_, 0.0);
    lo_.assign(cols_, 0.0);
    hi_.assign(cols_, 0.0);
    x_.assign(cols_, 0.0);
    cost_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = p.lower[j];
      hi_[j] = p.upper[j];
      x_[j] = start[j];
      cost_[j] = p.cost[j];
    }
    basis_.assign(m_, 0);
    in_basis_.assign(cols_, 0);
    rhs_.assign(m_, 0.0);
    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (const Term& tm : p.rows[i].terms) t(i, tm.var) += tm.coef;
      rhs_[i] = p.rows[i].rhs;
      const std::size_t s = n_ + i;
      t(i, s) = 1.0;
      lo_[s] = slack_lo[i];
      hi_[s] = slack_hi[i];
      const double r = residual[i];
      if (r >= slack_lo[i] - kFeasTol && r <= slack_hi[i] + kFeasTol) {
        x_[s] = std::clamp(r, slack_lo[i], slack_hi[i]);
        basis_[i] = s;
      } else {
        const double at = r < slack_lo[i] ? slack_lo[i] : slack_hi[i];
        x_[s] = at;
        const double sign = r - at > 0 ? 1.0 : -1.0;
        t(i, art) = sign;
        if (sign < 0) {
          for (std::size_t j = 0; j < cols_; ++j) t(i, j) = -t(i, j);
          rhs_[i] = -rhs_[i];
        }
        lo_[art] = 0.0;
        hi_[art] = kInf;
        x_[art] = std::abs(r - at);
        basis_[i] = art++;
      }
      in_basis_[basis_[i]] = 1;
    }
    d_.assign(cols_, 0.0);
    iterations_ = 0;
  }

  LpStatus solve_from_scratch() {
    // Keep the current bounds of the structural variables.
    LpProblem p = original_;
    for (std::size_t j = 0; j < n_; ++j) {
      p.lower[j] = lo_[j];
      p.upper[j] = hi_[j];
    }
    const std::size_t iters = iterations_;
    load(p);
    iterations_ = iters;
    return solve();
  }

  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j < cols_; ++j) d_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[i * stride_];
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  // x_B = B^-1 b - B^-1 N x_N.
  void recompute_basics() {
    for (std::size_t i = 0; i < m_; ++i) {
      double acc = rhs_[i];
      const double* row = &tab_[i * stride_];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!in_basis_[j] && row[j] != 0.0) acc -= row[j] * x_[j];
      }
      x_[basis_[i]] = acc;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    double* prow = &tab_[r * stride_];
    const double p = prow[q];
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] /= p;
        if (std::abs(prow[j]) < 1e-14) prow[j] = 0.0;
        if (prow[j] != 0.0) nz_.push_back(j);
      }
    }
    rhs_[r] /= p;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * stride_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) {
        row[j] -= f * prow[j];
        if (std::abs(row[j]) < 1e-14) row[j] = 0.0;
      }
      row[q] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double dq = d_[q];
    if (dq != 0.0) {
      for (std::size_t j : nz_) d_[j] -= dq * prow[j];
      d_[q] = 0.0;
    }
    in_basis_[basis_[r]] = 0;
    basis_[r] = q;
    in_basis_[q] = 1;
    ++iterations_;
  }

  bool at_lower(std::size_t j) const { return x_[j] <= lo_[j] + kFeasTol; }
  bool at_upper(std::size_t j) const { return x_[j] >= hi_[j] - kFeasTol; }

  LpStatus primal_loop() {
    std::size_t degenerate = 0;
    const std::size_t limit = 50000 + 50 * (m_ + cols_);
    for (std::size_t it = 0; it < limit; ++it) {
      const bool bland = degenerate > 50;
      std::size_t q = cols_;
      double best = 0.0;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_basis_[j] || lo_[j] == hi_[j]) continue;
        int dj = 0;
        if (d_[j] < -kOptTol && !at_upper(j)) dj = 1;
        else if (d_[j] > kOptTol && !at_lower(j)) dj = -1;
        if (!dj) continue;
        if (bland) {
          q = j;
          dir = dj;
          break;
        }
        if (std::abs(d_[j]) > best) {
          best = std::abs(d_[j]);
          q = j;
          dir = dj;
        }
      }
      if (q == cols_) return LpStatus::kOptimal;

      double theta = hi_[q] - lo_[q];
      std::size_t r = m_;
      double r_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t(i, q) * dir;
        if (std::abs(a) <= kPivTol) continue;
        const std::size_t b = basis_[i];
        double lim;
        if (a > 0) {
          if (!std::isfinite(lo_[b])) continue;
          lim = std::max(0.0, (x_[b] - lo_[b]) / a);
        } else {
          if (!std::isfinite(hi_[b])) continue;
          lim = std::max(0.0, (hi_[b] - x_[b]) / -a);
        }
        const bool better = lim < theta - 1e-12 ||
                            (lim <= theta + 1e-12 && r < m_ &&
                             (bland ? basis_[i] < basis_[r] : std::abs(a) > std::abs(r_alpha)));
        if (better) {
          theta = lim;
          r = i;
          r_alpha = a;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;
      degenerate = theta < 1e-12 ? degenerate + 1 : 0;
      const double step = dir * theta;
      x_[q] += step;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t(i, q);
        if (a != 0.0) x_[basis_[i]] -= a * step;
      }
      if (r == m_) {
        x_[q] = dir > 0 ? hi_[q] : lo_[q];
        continue;
      }
      const std::size_t leaving = basis_[r];
      x_[leaving] = r_alpha > 0 ? lo_[leaving] : hi_[leaving];
      pivot(r, q);
    }
    return LpStatus::kIterationLimit;
  }

  LpStatus dual_loop() {
    const std::size_t limit = 50000 + 50 * (m_ + cols_);
    for (std::size_t it = 0; it < limit; ++it) {
      std::size_t r = m_;
      double worst = kFeasTol;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t b = basis_[i];
        const double v = std::max(lo_[b] - x_[b], x_[b] - hi_[b]);
        if (v > worst) {
          worst = v;
          r = i;
        }
      }
      if (r == m_) return LpStatus::kOptimal;
      const std::size_t b = basis_[r];
      const bool below = x_[b] < lo_[b];
      const double target = below ? lo_[b] : hi_[b];
      std::size_t q = cols_;
      double best_ratio = kInf, best_alpha = 0.0;
      const double* row = &tab_[r * stride_];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_basis_[j] || lo_[j] == hi_[j]) continue;
        const double a = row[j];
        if (std::abs(a) <= kPivTol) continue;
        // Moving x_j up changes x_b by -a; we need x_b to move toward target.
        const bool can_up = !at_upper(j);
        const bool can_down = !at_lower(j);
        const bool up_helps = below ? a < 0 : a > 0;
        if (!((up_helps && can_up) || (!up_helps && can_down))) continue;
        const double ratio = std::abs(d_[j]) / std::abs(a);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(a) > std::abs(best_alpha))) {
          best_ratio = ratio;
          best_alpha = a;
          q = j;
        }
      }
      if (q == cols_) return LpStatus::kInfeasible;
      const double delta = (x_[b] - target) / best_alpha;
      x_[q] += delta;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t(i, q);
        if (a != 0.0) x_[basis_[i]] -= a * delta;
      }
      x_[b] = target;
      pivot(r, q);
    }
    return LpStatus::kIterationLimit;
  }

  void evict_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      const double* row = &tab_[i * stride_];
      std::size_t q = cols_;
      double best = 1e-7;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (!in_basis_[j] && std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          q = j;
        }
      }
      if (q != cols_) {
        const std::size_t art = basis_[i];
        pivot(i, q);
        x_[art] = 0.0;
      }
    }
    for (std::size_t j = n_ + m_; j < cols_; ++j) {
      lo_[j] = hi_[j] = 0.0;
      if (!in_basis_[j]) x_[j] = 0.0;
    }
  }

  LpProblem original_;
  std::size_t n_ = 0, m_ = 0, cols_ = 0, stride_ = 0, art_count_ = 0;
  std::vector<double> tab_, rhs_, lo_, hi_, x_, cost_, d_;
  std::vector<std::size_t> basis_, nz_;
  std::vector<char> in_basis_;
  std::size_t iterations_ = 0;
};

}  // namespace sclp::lp

#endif  // SCLP_SIMPLEX_HPP_
