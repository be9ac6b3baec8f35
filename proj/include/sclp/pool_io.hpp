// SPDX-License-Identifier: Apache-2.0
//
// Newline-delimited JSON persistence for cut pools.
//
//   {"network_hash": "...", "max_size": 8}          first line (null = unlimited)
//   {"cut_id": 0, "links": [3, 17]}                  one line per interned cut
//   {"od": [1, 2], "cuts": [0, 5, 9]}               one line per OD pair
//
// Link ids are the dense network ids, not external labels.

#ifndef SCLP_POOL_IO_HPP_
#define SCLP_POOL_IO_HPP_

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sclp/cut_enum.hpp"
#include "sclp/errors.hpp"
#include "sclp/network.hpp"

namespace sclp {

inline void save_pool(const CutPool& pool, std::ostream& out) {
  nlohmann::json header{{"network_hash", pool.network_hash}, {"max_size", nullptr}};
  if (pool.max_size) header["max_size"] = *pool.max_size;
  out << header.dump() << '\n';
  for (std::size_t c = 0; c < pool.cuts.size(); ++c) {
    out << nlohmann::json{{"cut_id", c}, {"links", pool.cuts[c].links}}.dump() << '\n';
  }
  for (std::size_t i = 0; i < pool.ods.size(); ++i) {
    nlohmann::json od{{"od", {pool.ods[i].origin, pool.ods[i].destination}},
                      {"cuts", pool.membership[i]}};
    out << od.dump() << '\n';
  }
}

inline void save_pool_file(const CutPool& pool, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  save_pool(pool, out);
}

/// Reads a pool written by save_pool and checks it against `net`: the hash
/// must match, link and cut ids must be known, and every (OD, cut) entry
/// must disconnect its pair. Dominated entries are pruned and cut ids are
/// renumbered lexicographically.
inline CutPool load_pool(std::istream& in, const Network& net) {
  CutPool pool;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::unordered_map<std::size_t, CutId> id_of;  // file cut id -> position
  auto parse = [&](const std::string& text) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
  };
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const nlohmann::json rec = parse(line);
      if (!rec.is_object()) throw ParseError("expected a JSON object", line_no);
      if (!have_header) {
        if (!rec.contains("network_hash")) throw ParseError("missing pool header", line_no);
        pool.network_hash = rec.at("network_hash").get<std::string>();
        if (pool.network_hash != net.fingerprint()) {
          throw ParseError("pool was built for a different network", line_no);
        }
        const auto& ms = rec.value("max_size", nlohmann::json());
        if (!ms.is_null()) pool.max_size = ms.get<std::size_t>();
        have_header = true;
      } else if (rec.contains("cut_id")) {
        const auto id = rec.at("cut_id").get<std::size_t>();
        CutSet c{rec.at("links").get<std::vector<LinkId>>()};
        std::sort(c.links.begin(), c.links.end());
        if (c.links.empty()) throw ParseError("empty cut", line_no);
        if (std::adjacent_find(c.links.begin(), c.links.end()) != c.links.end()) {
          throw ParseError("repeated link in cut", line_no);
        }
        if (c.links.back() >= net.link_count()) {
          throw ParseError("unknown link id " + std::to_string(c.links.back()), line_no);
        }
        if (!id_of.emplace(id, static_cast<CutId>(pool.cuts.size())).second) {
          throw ParseError("duplicate cut id " + std::to_string(id), line_no);
        }
        pool.cuts.push_back(std::move(c));
      } else if (rec.contains("od")) {
        const auto pair = rec.at("od").get<std::vector<NodeId>>();
        if (pair.size() != 2) throw ParseError("od must have two node ids", line_no);
        const OdPair w{pair[0], pair[1]};
        try {
          net.od_index(w);
        } catch (const InputError& e) {
          throw ParseError(e.what(), line_no);
        }
        if (pool.find_od(w)) throw ParseError("duplicate od record", line_no);
        std::vector<CutId> ids;
        for (auto raw : rec.at("cuts").get<std::vector<std::size_t>>()) {
          auto it = id_of.find(raw);
          if (it == id_of.end()) throw ParseError("unknown cut id " + std::to_string(raw), line_no);
          if (!is_valid_cut(net, w, pool.cuts[it->second].links)) {
            throw ParseError("cut " + std::to_string(raw) + " does not separate the od pair", line_no);
          }
          ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        pool.ods.push_back(w);
        pool.membership.push_back(std::move(ids));
      } else {
        throw ParseError("unrecognised record", line_no);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), line_no);
  }
  if (!have_header) throw ParseError("missing pool header", line_no + 1);

  // Keep ODs in network order.
  std::vector<std::size_t> order(pool.ods.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.od_index(pool.ods[a]) < net.od_index(pool.ods[b]);
  });
  CutPool sorted;
  sorted.network_hash = pool.network_hash;
  sorted.max_size = pool.max_size;
  sorted.cuts = std::move(pool.cuts);
  for (std::size_t i : order) {
    sorted.ods.push_back(pool.ods[i]);
    sorted.membership.push_back(std::move(pool.membership[i]));
  }
  prune_dominated(net, sorted);
  return sorted;
}

inline CutPool load_pool_file(const std::string& path, const Network& net) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return load_pool(in, net);
}

}  // namespace sclp

#endif  // SCLP_POOL_IO_HPP_
