// SPDX-License-Identifier: Apache-2.0
//
// Enumeration of minimal directed (s,t)-cutsets and the deduplicated cut pool
// built from them.
//
// A minimal (s,t)-cutset C is the outgoing boundary of a node set S with
// s in S, t not in S, where every node of S is reachable from s inside S and
// the head of every boundary link reaches t without entering S. The
// enumerator walks such sets with an include/exclude search: `S` grows only
// along out-neighbours, and excluded nodes must keep a t-path that avoids S.
// Every partial state that passes this test has a completion, so each leaf of
// the search is a cut and the work per emitted cut is polynomial.

#ifndef SCLP_CUT_ENUM_HPP_
#define SCLP_CUT_ENUM_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

using CutId = std::uint32_t;

/// Sorted set of link ids.
struct CutSet {
  std::vector<LinkId> links;

  std::size_t size() const { return links.size(); }
  bool contains(LinkId e) const { return std::binary_search(links.begin(), links.end(), e); }

  friend auto operator<=>(const CutSet&, const CutSet&) = default;
};

struct CutSetHash {
  std::size_t operator()(const std::vector<LinkId>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (LinkId e : v) {
      h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Cut size cap; std::nullopt means unlimited.
using SizeCap = std::optional<std::size_t>;

inline bool within_cap(std::size_t size, const SizeCap& cap) { return !cap || size <= *cap; }

/// Interned cutsets plus per-OD membership lists.
struct CutPool {
  std::string network_hash;
  SizeCap max_size;
  /// Distinct cutsets; the CutId is the index. Sorted lexicographically.
  std::vector<CutSet> cuts;
  /// OD pairs covered by this pool, in network OD order.
  std::vector<OdPair> ods;
  /// membership[i] lists the (ascending) cut ids valid for ods[i].
  std::vector<std::vector<CutId>> membership;

  std::size_t total_rows() const {
    std::size_t n = 0;
    for (const auto& m : membership) n += m.size();
    return n;
  }

  /// Index of an OD pair within `ods`, or nullopt.
  std::optional<std::size_t> find_od(const OdPair& w) const {
    for (std::size_t i = 0; i < ods.size(); ++i) {
      if (ods[i] == w) return i;
    }
    return std::nullopt;
  }

  friend bool operator==(const CutPool&, const CutPool&) = default;
};

/// One row of the size histogram: counts with OD duplication (one per
/// (OD, cut) membership) and after interning (distinct link sets).
struct HistogramRow {
  std::size_t size = 0;
  std::size_t with_duplication = 0;
  std::size_t without_duplication = 0;

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

inline std::vector<HistogramRow> size_histogram(const CutPool& pool) {
  std::map<std::size_t, HistogramRow> rows;
  std::vector<char> referenced(pool.cuts.size(), 0);
  for (const auto& m : pool.membership) {
    for (CutId c : m) {
      auto& row = rows[pool.cuts[c].size()];
      row.size = pool.cuts[c].size();
      ++row.with_duplication;
      referenced[c] = 1;
    }
  }
  for (std::size_t c = 0; c < pool.cuts.size(); ++c) {
    if (referenced[c]) ++rows[pool.cuts[c].size()].without_duplication;
  }
  std::vector<HistogramRow> out;
  for (auto& [_, r] : rows) out.push_back(r);
  return out;
}

/// True iff removing `links` disconnects t from s.
inline bool is_valid_cut(const Network& net, const OdPair& w, std::span<const LinkId> links) {
  return !reachable(net, links, w.origin, w.destination);
}

/// True iff `links` is a valid cut and restoring any single link reconnects.
inline bool is_minimal_cut(const Network& net, const OdPair& w, std::span<const LinkId> links) {
  std::vector<bool> removed(net.link_count(), false);
  for (LinkId e : links) {
    if (e >= net.link_count()) return false;
    removed[e] = true;
  }
  if (reachable(net, removed, w.origin, w.destination)) return false;
  for (LinkId e : links) {
    removed[e] = false;
    const bool reconnects = reachable(net, removed, w.origin, w.destination);
    removed[e] = true;
    if (!reconnects) return false;
  }
  return true;
}

/// All links leaving s. Throws InputError when s has no outgoing link.
inline CutSet outflow_cut(const Network& net, NodeId s) {
  auto out = net.out_links(s);
  if (out.empty()) throw InputError("node " + std::to_string(s) + " has no outgoing link");
  CutSet c{std::vector<LinkId>(out.begin(), out.end())};
  std::sort(c.links.begin(), c.links.end());
  return c;
}

/// All links entering t. Throws InputError when t has no incoming link.
inline CutSet inflow_cut(const Network& net, NodeId t) {
  auto in = net.in_links(t);
  if (in.empty()) throw InputError("node " + std::to_string(t) + " has no incoming link");
  CutSet c{std::vector<LinkId>(in.begin(), in.end())};
  std::sort(c.links.begin(), c.links.end());
  return c;
}

namespace detail {

/// Fixed-width node bitset.
template <std::size_t W>
struct NodeMask {
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int first() const {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k]) return static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w[k])));
    return -1;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto x : w) n += static_cast<std::size_t>(std::popcount(x));
    return n;
  }
  NodeMask operator|(const NodeMask& o) const {
    NodeMask r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }
  NodeMask operator&(const NodeMask& o) const {
    NodeMask r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  NodeMask minus(const NodeMask& o) const {
    NodeMask r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
};

template <std::size_t W>
class CutEnumerator {
 public:
  explicit CutEnumerator(const Network& net) : net_(net) {
    const std::size_t n = net.node_count();
    out_.resize(n);
    in_.resize(n);
    for (LinkId e = 0; e < net.link_count(); ++e) {
      const std::size_t u = net.tail_index(e), v = net.head_index(e);
      out_[u].set(v);
      in_[v].set(u);
      link_of_.emplace(u * n + v, e);
    }
  }

  /// Calls `emit(std::vector<LinkId>&&)` for each minimal cut within the cap.
  template <typename Emit>
  void run(std::size_t s, std::size_t t, const SizeCap& cap, Emit&& emit) const {
    struct Frame {
      NodeMask<W> inside;    // S
      NodeMask<W> excluded;  // X: forced outside, must keep a t-path avoiding S
      NodeMask<W> reach;     // union of out-neighbours of S
    };
    NodeMask<W> target;
    target.set(t);
    std::vector<Frame> stack;
    {
      Frame f;
      f.inside.set(s);
      f.reach = out_[s];
      stack.push_back(f);
    }
    const std::size_t limit = cap ? *cap : std::numeric_limits<std::size_t>::max();
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      const NodeMask<W> to_t = reaches_target(t, f.inside);
      if (f.excluded.minus(to_t).any()) continue;
      const NodeMask<W> outside = f.excluded | target;
      std::size_t fixed_links = 0;
      f.inside.for_each([&](std::size_t u) { fixed_links += (out_[u] & outside).count(); });
      if (fixed_links > limit) continue;
      const NodeMask<W> frontier = f.reach.minus(f.inside).minus(outside);
      const int v = frontier.first();
      if (v < 0) {
        std::vector<LinkId> cut;
        cut.reserve(fixed_links);
        const std::size_t n = net_.node_count();
        f.inside.for_each([&](std::size_t u) {
          (out_[u] & outside).for_each([&](std::size_t h) { cut.push_back(link_of_.at(u * n + h)); });
        });
        std::sort(cut.begin(), cut.end());
        emit(std::move(cut));
        continue;
      }
      const auto vi = static_cast<std::size_t>(v);
      if (to_t.test(vi)) {
        Frame ex = f;
        ex.excluded.set(vi);
        stack.push_back(ex);
      }
      Frame in = f;
      in.inside.set(vi);
      in.reach = in.reach | out_[vi];
      stack.push_back(in);
    }
  }

 private:
  // Nodes that reach t without passing through `blocked`.
  NodeMask<W> reaches_target(std::size_t t, const NodeMask<W>& blocked) const {
    NodeMask<W> seen;
    seen.set(t);
    NodeMask<W> todo = seen;
    while (todo.any()) {
      NodeMask<W> next;
      todo.for_each([&](std::size_t v) { next = next | in_[v]; });
      next = next.minus(blocked).minus(seen);
      seen = seen | next;
      todo = next;
    }
    return seen;
  }

  const Network& net_;
  std::vector<NodeMask<W>> out_, in_;
  std::unordered_map<std::size_t, LinkId> link_of_;
};

template <typename Emit>
void dispatch_enumeration(const Network& net, std::size_t s, std::size_t t, const SizeCap& cap,
                          Emit&& emit) {
  const std::size_t n = net.node_count();
  if (n <= 64) {
    CutEnumerator<1>(net).run(s, t, cap, emit);
  } else if (n <= 128) {
    CutEnumerator<2>(net).run(s, t, cap, emit);
  } else if (n <= 256) {
    CutEnumerator<4>(net).run(s, t, cap, emit);
  } else if (n <= 512) {
    CutEnumerator<8>(net).run(s, t, cap, emit);
  } else if (n <= 1024) {
    CutEnumerator<16>(net).run(s, t, cap, emit);
  } else if (n <= 4096) {
    CutEnumerator<64>(net).run(s, t, cap, emit);
  } else {
    throw InputError("cut enumeration supports at most 4096 nodes");
  }
}

}  // namespace detail

/// Streams every minimal (s,t)-cutset with at most `max_size` links.
/// Emission order is unspecified; see enumerate_st_cuts for sorted output.
template <typename Emit>
void for_each_st_cut(const Network& net, NodeId s, NodeId t, const SizeCap& max_size, Emit&& emit) {
  if (s == t) throw InputError("origin and destination must differ");
  const std::size_t si = net.node_index(s);
  const std::size_t ti = net.node_index(t);
  if (!reachable(net, std::vector<bool>{}, s, t)) return;
  detail::dispatch_enumeration(net, si, ti, max_size, emit);
}

/// All minimal (s,t)-cutsets with at most `max_size` links, sorted
/// lexicographically by link set. Empty when t is unreachable from s.
inline std::vector<CutSet> enumerate_st_cuts(const Network& net, NodeId s, NodeId t,
                                             const SizeCap& max_size = std::nullopt) {
  std::vector<CutSet> out;
  for_each_st_cut(net, s, t, max_size, [&](std::vector<LinkId>&& c) { out.push_back({std::move(c)}); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Exhaustive reference enumeration over all link subsets (|E| <= 20).
inline std::vector<CutSet> enumerate_st_cuts_brute(const Network& net, NodeId s, NodeId t,
                                                   const SizeCap& max_size = std::nullopt) {
  if (s == t) throw InputError("origin and destination must differ");
  net.node_index(s);
  net.node_index(t);
  const std::size_t m = net.link_count();
  if (m > 20) throw InputError("brute-force cut enumeration is limited to 20 links");
  std::vector<CutSet> out;
  if (!reachable(net, std::vector<bool>{}, s, t)) return out;
  std::vector<std::uint32_t> disconnecting;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    std::vector<bool> removed(m);
    for (std::size_t e = 0; e < m; ++e) removed[e] = (mask >> e) & 1U;
    if (!reachable(net, removed, s, t)) disconnecting.push_back(mask);
  }
  std::vector<char> is_disc(std::size_t{1} << m, 0);
  for (auto mask : disconnecting) is_disc[mask] = 1;
  for (auto mask : disconnecting) {
    bool minimal = true;
    for (std::size_t e = 0; e < m && minimal; ++e) {
      if (((mask >> e) & 1U) && is_disc[mask & ~(std::uint32_t{1} << e)]) minimal = false;
    }
    if (!minimal) continue;
    CutSet c;
    for (std::size_t e = 0; e < m; ++e)
      if ((mask >> e) & 1U) c.links.push_back(static_cast<LinkId>(e));
    if (within_cap(c.size(), max_size)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Drops interned cuts no OD references and renumbers the rest in
/// lexicographic order. Membership lists stay sorted.
inline void compact_pool(CutPool& pool) {
  std::vector<char> used(pool.cuts.size(), 0);
  for (const auto& m : pool.membership)
    for (CutId c : m) used[c] = 1;
  std::vector<CutId> order;
  for (std::size_t c = 0; c < pool.cuts.size(); ++c)
    if (used[c]) order.push_back(static_cast<CutId>(c));
  std::sort(order.begin(), order.end(),
            [&](CutId a, CutId b) { return pool.cuts[a] < pool.cuts[b]; });
  std::vector<CutId> remap(pool.cuts.size(), std::numeric_limits<CutId>::max());
  std::vector<CutSet> cuts;
  cuts.reserve(order.size());
  for (CutId old : order) {
    remap[old] = static_cast<CutId>(cuts.size());
    cuts.push_back(std::move(pool.cuts[old]));
  }
  pool.cuts = std::move(cuts);
  for (auto& m : pool.membership) {
    for (CutId& c : m) c = remap[c];
    std::sort(m.begin(), m.end());
  }
}

/// Removes, per OD pair, every cut that is a strict superset of another cut
/// stored for the same pair. Minimal cuts are never dominated by valid cuts,
/// so only non-minimal entries are checked against the stored list.
inline void prune_dominated(const Network& net, CutPool& pool) {
  for (std::size_t i = 0; i < pool.ods.size(); ++i) {
    auto& ids = pool.membership[i];
    std::vector<CutId> keep;
    keep.reserve(ids.size());
    for (CutId c : ids) {
      const CutSet& big = pool.cuts[c];
      bool dominated = false;
      if (!is_minimal_cut(net, pool.ods[i], big.links)) {
        for (CutId d : ids) {
          const CutSet& small = pool.cuts[d];
          if (d == c || small.size() >= big.size()) continue;
          if (std::includes(big.links.begin(), big.links.end(), small.links.begin(), small.links.end())) {
            dominated = true;
            break;
          }
        }
      }
      if (!dominated) keep.push_back(c);
    }
    ids = std::move(keep);
  }
  compact_pool(pool);
}

struct PoolBuildOptions {
  SizeCap max_size;
  /// Restrict to these OD pairs (network order is kept); all pairs if empty.
  std::vector<OdPair> od_filter;
  /// Worker threads; 0 selects hardware concurrency.
  unsigned workers = 0;
};

/// Enumerates cuts for every requested OD pair that has an s->t path,
/// interns identical link sets
/// and assigns lexicographic cut ids. Output is independent of `workers`.
inline CutPool build_pool(const Network& net, const PoolBuildOptions& opts) {
  if (opts.max_size && *opts.max_size < 1) throw InputError("max cut size must be at least 1");
  CutPool pool;
  pool.network_hash = net.fingerprint();
  pool.max_size = opts.max_size;
  if (opts.od_filter.empty()) {
    pool.ods = net.od_pairs();
  } else {
    std::vector<std::pair<std::size_t, OdPair>> sel;
    for (const OdPair& w : opts.od_filter) sel.emplace_back(net.od_index(w), w);
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    for (auto& [_, w] : sel) pool.ods.push_back(w);
  }
  // Pairs without any s->t path carry nothing to intercept.
  std::erase_if(pool.ods, [&](const OdPair& w) {
    return !reachable(net, std::vector<bool>{}, w.origin, w.destination);
  });
  pool.membership.resize(pool.ods.size());

  unsigned workers = opts.workers ? opts.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, pool.ods.size())));

  std::unordered_map<std::vector<LinkId>, CutId, CutSetHash> interned;
  const std::size_t batch = std::max<std::size_t>(1, workers * 2);
  for (std::size_t begin = 0; begin < pool.ods.size(); begin += batch) {
    const std::size_t end = std::min(pool.ods.size(), begin + batch);
    std::vector<std::vector<std::vector<LinkId>>> found(end - begin);
    std::atomic<std::size_t> next{begin};
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        auto& sink = found[i - begin];
        for_each_st_cut(net, pool.ods[i].origin, pool.ods[i].destination, opts.max_size,
                        [&](std::vector<LinkId>&& c) { sink.push_back(std::move(c)); });
        std::sort(sink.begin(), sink.end());
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> threads;
      for (unsigned k = 0; k < workers; ++k) threads.emplace_back(work);
      for (auto& th : threads) th.join();
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto& ids = pool.membership[i];
      for (auto& c : found[i - begin]) {
        auto [it, inserted] = interned.try_emplace(c, static_cast<CutId>(pool.cuts.size()));
        if (inserted) pool.cuts.push_back({std::move(c)});
        ids.push_back(it->second);
      }
    }
  }
  compact_pool(pool);
  return pool;
}

inline CutPool build_pool(const Network& net, SizeCap max_size, std::vector<OdPair> od_filter = {},
                          unsigned workers = 0) {
  PoolBuildOptions opts;
  opts.max_size = max_size;
  opts.od_filter = std::move(od_filter);
  opts.workers = workers;
  return build_pool(net, opts);
}

}  // namespace sclp

#endif  // SCLP_CUT_ENUM_HPP_
