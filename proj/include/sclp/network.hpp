// SPDX-License-Identifier: Apache-2.0
//
// Directed road network model: links with dense ids, centroid set and the
// derived origin-destination pairs, degree queries and reachability after
// link removal.

#ifndef SCLP_NETWORK_HPP_
#define SCLP_NETWORK_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sclp/errors.hpp"

namespace sclp {

/// External node identifier as it appears in input files.
using NodeId = std::int64_t;
/// Dense link index, 0..|E|-1, in input order.
using LinkId = std::uint32_t;

struct Link {
  NodeId tail = 0;
  NodeId head = 0;
  /// External label used for reporting (defaults to the 1-based row index).
  std::string label;
};

struct OdPair {
  NodeId origin = 0;
  NodeId destination = 0;

  friend auto operator<=>(const OdPair&, const OdPair&) = default;
};

/// Immutable directed graph with centroids. Nodes are stored densely in
/// ascending external-id order; all queries accept external ids.
class Network {
 public:
  Network() = default;

  /// Validates and builds a network. Throws InputError on self-loops,
  /// duplicate (tail, head) pairs, non-positive node ids, duplicate or
  /// unknown centroids.
  static Network build(std::vector<Link> links, std::vector<NodeId> centroids);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const std::vector<NodeId>& node_ids() const { return node_ids_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(id); }
  const std::vector<NodeId>& centroids() const { return centroids_; }
  const std::vector<OdPair>& od_pairs() const { return od_pairs_; }

  bool has_node(NodeId v) const { return index_.count(v) != 0; }

  /// Dense index of an external node id; throws InputError for unknown ids.
  std::size_t node_index(NodeId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) {
      throw InputError("unknown node id " + std::to_string(v));
    }
    return it->second;
  }
  NodeId node_id(std::size_t index) const { return node_ids_.at(index); }

  std::size_t tail_index(LinkId e) const { return tail_index_[e]; }
  std::size_t head_index(LinkId e) const { return head_index_[e]; }

  std::span<const LinkId> out_links_of_index(std::size_t u) const {
    return {out_links_.data() + out_begin_[u], out_begin_[u + 1] - out_begin_[u]};
  }
  std::span<const LinkId> in_links_of_index(std::size_t u) const {
    return {in_links_.data() + in_begin_[u], in_begin_[u + 1] - in_begin_[u]};
  }
  std::span<const LinkId> out_links(NodeId v) const { return out_links_of_index(node_index(v)); }
  std::span<const LinkId> in_links(NodeId v) const { return in_links_of_index(node_index(v)); }

  std::size_t out_degree(NodeId s) const { return out_links(s).size(); }
  std::size_t in_degree(NodeId t) const { return in_links(t).size(); }

  /// Position of an OD pair in od_pairs(); throws InputError if absent.
  std::size_t od_index(const OdPair& w) const;

  /// Link id for an external label; throws InputError if unknown.
  LinkId link_by_label(std::string_view label) const;

  /// Stable 64-bit FNV-1a fingerprint of links and centroids, as 16 hex digits.
  std::string fingerprint() const;

 private:
  std::vector<NodeId> node_ids_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<Link> links_;
  std::vector<std::size_t> tail_index_, head_index_;
  std::vector<std::size_t> out_begin_, in_begin_;
  std::vector<LinkId> out_links_, in_links_;
  std::vector<NodeId> centroids_;
  std::vector<OdPair> od_pairs_;
};

/// True iff t is reachable from s using only links outside `removed`.
/// `removed` is a per-link flag vector (size link_count()) or empty.
inline bool reachable(const Network& net, const std::vector<bool>& removed, NodeId s, NodeId t) {
  const std::size_t si = net.node_index(s);
  const std::size_t ti = net.node_index(t);
  if (si == ti) return true;
  std::vector<char> seen(net.node_count(), 0);
  std::vector<std::size_t> stack{si};
  seen[si] = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (LinkId e : net.out_links_of_index(u)) {
      if (!removed.empty() && removed[e]) continue;
      const std::size_t v = net.head_index(e);
      if (seen[v]) continue;
      if (v == ti) return true;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return false;
}

/// Convenience overload taking a list of removed link ids.
inline bool reachable(const Network& net, std::span<const LinkId> removed, NodeId s, NodeId t) {
  std::vector<bool> flags(net.link_count(), false);
  for (LinkId e : removed) {
    if (e >= net.link_count()) throw InputError("unknown link id " + std::to_string(e));
    flags[e] = true;
  }
  return reachable(net, flags, s, t);
}

/// Reads a link table: header row, tab/comma/whitespace separated, with
/// columns `init_node` and `term_node` (case-insensitive, TNTP-style `~`
/// comment prefixes and trailing `;` tolerated). An optional `link_id`
/// column provides labels. Extra columns are ignored.
inline std::vector<Link> read_link_table(std::istream& in);
inline std::vector<Link> read_link_table_file(const std::string& path);

/// Reads centroids: one node id per line, or a single JSON array.
inline std::vector<NodeId> read_centroids(std::istream& in);
inline std::vector<NodeId> read_centroids_file(const std::string& path);

/// load_network: link table + centroid list -> validated Network.
inline Network load_network(std::vector<Link> links, std::vector<NodeId> centroids) {
  return Network::build(std::move(links), std::move(centroids));
}
inline Network load_network_files(const std::string& link_path, const std::string& centroid_path) {
  return Network::build(read_link_table_file(link_path), read_centroids_file(centroid_path));
}

// ---------------------------------------------------------------------------
// Implementation

inline Network Network::build(std::vector<Link> links, std::vector<NodeId> centroids) {
  Network net;
  std::map<std::pair<NodeId, NodeId>, std::size_t> seen_pairs;
  std::map<NodeId, std::size_t> ordered;
  for (std::size_t row = 0; row < links.size(); ++row) {
    Link& l = links[row];
    if (l.tail <= 0 || l.head <= 0) {
      throw InputError("link row " + std::to_string(row + 1) + ": node ids must be positive");
    }
    if (l.tail == l.head) {
      throw InputError("link row " + std::to_string(row + 1) + ": self-loop at node " +
                       std::to_string(l.tail));
    }
    auto [it, inserted] = seen_pairs.emplace(std::make_pair(l.tail, l.head), row);
    if (!inserted) {
      throw InputError("link row " + std::to_string(row + 1) + ": duplicate link (" +
                       std::to_string(l.tail) + "," + std::to_string(l.head) +
                       ") first seen at row " + std::to_string(it->second + 1));
    }
    if (l.label.empty()) l.label = std::to_string(row + 1);
    ordered.emplace(l.tail, 0);
    ordered.emplace(l.head, 0);
  }
  for (auto& [id, idx] : ordered) {
    idx = net.node_ids_.size();
    net.node_ids_.push_back(id);
    net.index_.emplace(id, idx);
  }
  const std::size_t n = net.node_ids_.size();
  net.links_ = std::move(links);
  const std::size_t m = net.links_.size();
  net.tail_index_.resize(m);
  net.head_index_.resize(m);
  net.out_begin_.assign(n + 1, 0);
  net.in_begin_.assign(n + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    net.tail_index_[e] = net.index_.at(net.links_[e].tail);
    net.head_index_[e] = net.index_.at(net.links_[e].head);
    ++net.out_begin_[net.tail_index_[e] + 1];
    ++net.in_begin_[net.head_index_[e] + 1];
  }
  for (std::size_t u = 0; u < n; ++u) {
    net.out_begin_[u + 1] += net.out_begin_[u];
    net.in_begin_[u + 1] += net.in_begin_[u];
  }
  net.out_links_.resize(m);
  net.in_links_.resize(m);
  std::vector<std::size_t> out_fill(net.out_begin_.begin(), net.out_begin_.end() - 1);
  std::vector<std::size_t> in_fill(net.in_begin_.begin(), net.in_begin_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    net.out_links_[out_fill[net.tail_index_[e]]++] = static_cast<LinkId>(e);
    net.in_links_[in_fill[net.head_index_[e]]++] = static_cast<LinkId>(e);
  }

  std::map<NodeId, int> centroid_seen;
  for (NodeId q : centroids) {
    if (!net.has_node(q)) {
      throw InputError("unknown centroid id " + std::to_string(q) +
                       " (not an endpoint of any link)");
    }
    if (centroid_seen[q]++ != 0) {
      throw InputError("duplicate centroid id " + std::to_string(q));
    }
  }
  net.centroids_ = std::move(centroids);
  net.od_pairs_.reserve(net.centroids_.size() * (net.centroids_.size() ? net.centroids_.size() - 1 : 0));
  for (NodeId s : net.centroids_) {
    for (NodeId t : net.centroids_) {
      if (s != t) net.od_pairs_.push_back({s, t});
    }
  }
  return net;
}

inline std::size_t Network::od_index(const OdPair& w) const {
  // od_pairs_ is generated centroid-major, so the index is arithmetic.
  const auto pos = [&](NodeId v) -> std::size_t {
    auto it = std::find(centroids_.begin(), centroids_.end(), v);
    if (it == centroids_.end()) {
      throw InputError("node " + std::to_string(v) + " is not a centroid");
    }
    return static_cast<std::size_t>(it - centroids_.begin());
  };
  const std::size_t si = pos(w.origin);
  const std::size_t ti = pos(w.destination);
  if (si == ti) throw InputError("OD pair with identical origin and destination");
  return si * (centroids_.size() - 1) + (ti < si ? ti : ti - 1);
}

inline LinkId Network::link_by_label(std::string_view label) const {
  for (std::size_t e = 0; e < links_.size(); ++e) {
    if (links_[e].label == label) return static_cast<LinkId>(e);
  }
  throw InputError("unknown link label '" + std::string(label) + "'");
}

inline std::string Network::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>((v >> (8 * i)) & 0xff);
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::int64_t>(links_.size()));
  for (const Link& l : links_) {
    mix(l.tail);
    mix(l.head);
  }
  mix(static_cast<std::int64_t>(centroids_.size()));
  for (NodeId q : centroids_) mix(q);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  const bool has_delim = line.find('\t') != std::string::npos || line.find(',') != std::string::npos;
  std::string cur;
  for (char c : line) {
    const bool sep = has_delim ? (c == '\t' || c == ',') : std::isspace(static_cast<unsigned char>(c));
    if (sep) {
      if (has_delim || !cur.empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (has_delim || !cur.empty()) out.push_back(trim(cur));
  return out;
}

inline std::int64_t parse_node(const std::string& field, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer node id, got '" + field + "'", line_no);
  }
}

}  // namespace detail

inline std::vector<Link> read_link_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int tail_col = -1, head_col = -1, label_col = -1;
  std::vector<Link> links;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = detail::trim(line);
    if (!s.empty() && s.front() == '~') s = detail::trim(std::string_view(s).substr(1));
    while (!s.empty() && (s.back() == ';')) s = detail::trim(std::string_view(s).substr(0, s.size() - 1));
    if (s.empty() || s.front() == '#' || s.front() == '<') continue;
    auto fields = detail::split_fields(s);
    if (tail_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string f = detail::lower(fields[i]);
        if (f == "init_node") tail_col = static_cast<int>(i);
        else if (f == "term_node") head_col = static_cast<int>(i);
        else if (f == "link_id") label_col = static_cast<int>(i);
      }
      if (tail_col < 0 || head_col < 0) {
        throw ParseError("header must contain init_node and term_node columns", line_no);
      }
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max({tail_col, head_col, label_col}) + 1);
    if (fields.size() < need) throw ParseError("too few columns", line_no);
    Link l;
    l.tail = detail::parse_node(fields[static_cast<std::size_t>(tail_col)], line_no);
    l.head = detail::parse_node(fields[static_cast<std::size_t>(head_col)], line_no);
    if (label_col >= 0) l.label = fields[static_cast<std::size_t>(label_col)];
    links.push_back(std::move(l));
  }
  if (tail_col < 0) throw ParseError("empty link table", line_no);
  return links;
}

inline std::vector<Link> read_link_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open link table '" + path + "'");
  return read_link_table(in);
}

inline std::vector<NodeId> read_centroids(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::vector<NodeId> out;
  const std::string trimmed = detail::trim(text);
  if (!trimmed.empty() && trimmed.front() == '[') {
    if (trimmed.back() != ']') throw ParseError("unterminated JSON array", 1);
    std::string body = trimmed.substr(1, trimmed.size() - 2);
    std::size_t line_no = 1;
    std::string cur;
    for (char c : body + ",") {
      if (c == '\n') ++line_no;
      if (c == ',') {
        const std::string f = detail::trim(cur);
        if (!f.empty()) out.push_back(detail::parse_node(f, line_no));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string f = detail::trim(line);
    if (f.empty() || f.front() == '#') continue;
    out.push_back(detail::parse_node(f, line_no));
  }
  return out;
}

inline std::vector<NodeId> read_centroids_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open centroid file '" + path + "'");
  return read_centroids(in);
}

}  // namespace sclp

#endif  // SCLP_NETWORK_HPP_
