// SPDX-License-Identifier: Apache-2.0
//
// Ground truth for the OD covering rule. An OD pair is covered by a sensor
// set when every s->t path uses a sensor link, i.e. t is unreachable from s
// once the sensor links are removed; pairs without any path count as
// covered. The brute-force searches count only pairs that have a path, and
// scan link
// subsets in increasing size and lexicographic order, so the first optimum
// found is the lexicographically smallest witness.

#ifndef SCLP_COVERAGE_ORACLE_HPP_
#define SCLP_COVERAGE_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

struct CoverageReport {
  /// Parallel to Network::od_pairs().
  std::vector<OdPair> ods;
  std::vector<bool> covered;

  std::size_t covered_count() const { return static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true)); }
  double ratio() const { return ods.empty() ? 0.0 : static_cast<double>(covered_count()) / static_cast<double>(ods.size()); }
  bool is_covered(const OdPair& w) const {
    for (std::size_t i = 0; i < ods.size(); ++i)
      if (ods[i] == w) return covered[i];
    throw InputError("od pair is not part of the network");
  }
};

inline CoverageReport verify_coverage(const Network& net, std::span<const LinkId> sensors) {
  std::vector<bool> removed(net.link_count(), false);
  for (LinkId e : sensors) {
    if (e >= net.link_count()) throw InputError("unknown link id " + std::to_string(e));
    removed[e] = true;
  }
  CoverageReport r;
  r.ods = net.od_pairs();
  r.covered.reserve(r.ods.size());
  for (const OdPair& w : r.ods) r.covered.push_back(!reachable(net, removed, w.origin, w.destination));
  return r;
}

struct BruteResult {
  std::size_t value = 0;
  std::vector<LinkId> witness;
};

namespace detail {

inline void require_small(const Network& net) {
  if (net.link_count() > 20) throw InputError("brute-force search is limited to 20 links");
}

// Calls f(subset) for every k-subset of {0..m-1} in lexicographic order;
// stops early when f returns true.
template <typename F>
bool for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return false;
  std::vector<LinkId> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<LinkId>(i);
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<OdPair> connected_pairs(const Network& net) {
  std::vector<OdPair> out;
  for (const OdPair& w : net.od_pairs())
    if (reachable(net, std::vector<bool>{}, w.origin, w.destination)) out.push_back(w);
  return out;
}

inline std::size_t count_covered(const Network& net, const std::vector<OdPair>& ods,
                                 const std::vector<LinkId>& sensors) {
  std::vector<bool> removed(net.link_count(), false);
  for (LinkId e : sensors) removed[e] = true;
  std::size_t n = 0;
  for (const OdPair& w : ods) n += reachable(net, removed, w.origin, w.destination) ? 0 : 1;
  return n;
}

}  // namespace detail

/// Fewest links covering every OD pair (|E| <= 20).
inline BruteResult brute_min_links(const Network& net) {
  detail::require_small(net);
  const auto ods = detail::connected_pairs(net);
  const std::size_t total = ods.size();
  BruteResult best;
  for (std::size_t k = 0; k <= net.link_count(); ++k) {
    const bool found = detail::for_each_subset(net.link_count(), k, [&](const std::vector<LinkId>& s) {
      if (detail::count_covered(net, ods, s) != total) return false;
      best = {k, s};
      return true;
    });
    if (found) return best;
  }
  return best;
}

/// Most OD pairs covered with at most K links (|E| <= 20).
inline BruteResult brute_max_coverage(const Network& net, std::size_t budget) {
  detail::require_small(net);
  const auto ods = detail::connected_pairs(net);
  const std::size_t total = ods.size();
  BruteResult best;
  const std::size_t kmax = std::min(budget, net.link_count());
  for (std::size_t k = 1; k <= kmax && best.value < total; ++k) {
    detail::for_each_subset(net.link_count(), k, [&](const std::vector<LinkId>& s) {
      const std::size_t v = detail::count_covered(net, ods, s);
      if (v > best.value) best = {v, s};
      return best.value == total;
    });
  }
  return best;
}

}  // namespace sclp

#endif  // SCLP_COVERAGE_ORACLE_HPP_
