// SPDX-License-Identifier: Apache-2.0
//
// Degree-based upper bounds and the pool filters derived from them.

#ifndef SCLP_BOUNDS_HPP_
#define SCLP_BOUNDS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>

#include <json.hpp>

#include "sclp/cut_enum.hpp"
#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

struct BoundReport {
  /// min(out_degree(s), in_degree(t)) per OD pair.
  std::map<OdPair, std::size_t> per_od_min_cut_cap;
  std::map<NodeId, std::size_t> per_origin_cap;
  std::map<NodeId, std::size_t> per_destination_cap;
  /// min(sum of centroid out-degrees, sum of centroid in-degrees).
  std::size_t csp1_upper_bound = 0;
};

inline BoundReport compute_bounds(const Network& net) {
  if (net.centroids().empty()) throw InputError("network has no centroids");
  BoundReport r;
  std::size_t out_sum = 0, in_sum = 0;
  for (NodeId q : net.centroids()) {
    r.per_origin_cap[q] = net.out_degree(q);
    r.per_destination_cap[q] = net.in_degree(q);
    out_sum += net.out_degree(q);
    in_sum += net.in_degree(q);
  }
  for (const OdPair& w : net.od_pairs()) {
    r.per_od_min_cut_cap[w] = std::min(net.out_degree(w.origin), net.in_degree(w.destination));
  }
  r.csp1_upper_bound = std::min(out_sum, in_sum);
  return r;
}

inline nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json per_od = nlohmann::json::array();
  for (const auto& [w, cap] : r.per_od_min_cut_cap) {
    per_od.push_back({{"od", {w.origin, w.destination}}, {"cap", cap}});
  }
  nlohmann::json origins = nlohmann::json::object();
  for (const auto& [s, d] : r.per_origin_cap) origins[std::to_string(s)] = d;
  nlohmann::json dests = nlohmann::json::object();
  for (const auto& [t, d] : r.per_destination_cap) dests[std::to_string(t)] = d;
  return {{"csp1_upper_bound", r.csp1_upper_bound},
          {"per_origin_cap", origins},
          {"per_destination_cap", dests},
          {"per_od_min_cut_cap", per_od}};
}

namespace detail {

template <typename Keep>
CutPool filter_pool(const CutPool& pool, Keep&& keep) {
  CutPool out = pool;
  for (std::size_t i = 0; i < out.ods.size(); ++i) {
    auto& ids = out.membership[i];
    std::erase_if(ids, [&](CutId c) { return !keep(out.ods[i], out.cuts[c]); });
  }
  compact_pool(out);
  return out;
}

}  // namespace detail

/// Keeps, per OD (s,t), the cuts with |c| <= out_degree(s); with
/// `destination_side` also requires |c| <= in_degree(t). Throws
/// InfeasibleError naming the first OD left without cuts.
inline CutPool lemma2_filter(const CutPool& pool, const BoundReport& report,
                             bool destination_side = false) {
  CutPool out = detail::filter_pool(pool, [&](const OdPair& w, const CutSet& c) {
    if (c.size() > report.per_origin_cap.at(w.origin)) return false;
    return !destination_side || c.size() <= report.per_destination_cap.at(w.destination);
  });
  for (std::size_t i = 0; i < out.ods.size(); ++i) {
    if (out.membership[i].empty()) {
      throw InfeasibleError("od (" + std::to_string(out.ods[i].origin) + "," +
                            std::to_string(out.ods[i].destination) + ") has no cut after the degree filter");
    }
  }
  return out;
}

/// Keeps cuts with at most `cap` links. ODs may end up with no cuts.
inline CutPool size_cap_filter(const CutPool& pool, std::size_t cap) {
  if (cap < 1) throw InputError("cut size cap must be at least 1");
  CutPool out = detail::filter_pool(pool, [&](const OdPair&, const CutSet& c) { return c.size() <= cap; });
  const bool trimmed = out.total_rows() != pool.total_rows() || out.cuts.size() != pool.cuts.size();
  if ((pool.max_size && *pool.max_size > cap) || (!pool.max_size && trimmed)) out.max_size = cap;
  return out;
}

/// ODs of the pool with no remaining cut.
inline std::vector<OdPair> uncoverable_ods(const CutPool& pool) {
  std::vector<OdPair> out;
  for (std::size_t i = 0; i < pool.ods.size(); ++i)
    if (pool.membership[i].empty()) out.push_back(pool.ods[i]);
  return out;
}

}  // namespace sclp

#endif  // SCLP_BOUNDS_HPP_
