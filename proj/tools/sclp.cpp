// SPDX-License-Identifier: Apache-2.0
//
// sclp: cut enumeration, bounds, CSP1/CSP2 solves, coverage checks and the
// shared-cut table from the command line.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sclp/sclp.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kInfeasible = 1, kInput = 2, kLimit = 3, kIntegrity = 4 };

struct NetworkArgs {
  std::string links;
  std::string centroids;
  std::string fixture;
  std::string pool;
  unsigned workers = 0;
  bool verbose = false;
};

void add_network_options(CLI::App* app, NetworkArgs& a, bool with_pool) {
  app->add_option("--network", a.links, "link table (id, tail, head columns)");
  app->add_option("--centroids", a.centroids, "centroid node list");
  app->add_option("--seed-fixture", a.fixture, "built-in network instead of files")->check(CLI::IsMember({"sioux-falls"}));
  app->add_option("--workers", a.workers, "enumeration threads (0 = hardware)");
  app->add_flag("-v,--verbose", a.verbose, "log solver progress to stderr");
  if (with_pool) app->add_option("--pool", a.pool, "read cuts from a pool file instead of enumerating");
}

sclp::Network open_network(const NetworkArgs& a) {
  if (!a.fixture.empty()) {
    if (!a.links.empty() || !a.centroids.empty()) throw sclp::InputError("--seed-fixture excludes --network/--centroids");
    return sclp::fixtures::sioux_falls();
  }
  if (a.links.empty()) throw sclp::InputError("--network is required (or --seed-fixture)");
  if (a.centroids.empty()) throw sclp::InputError("--centroids is required (or --seed-fixture)");
  return sclp::load_network_files(a.links, a.centroids);
}

sclp::CutPool open_pool(const NetworkArgs& a, const sclp::Network& net, sclp::SizeCap cap) {
  if (!a.pool.empty()) {
    sclp::CutPool pool = sclp::load_pool_file(a.pool, net);
    return cap ? sclp::size_cap_filter(pool, *cap) : pool;
  }
  sclp::PoolBuildOptions opts;
  opts.max_size = cap;
  opts.workers = a.workers;
  return sclp::build_pool(net, opts);
}

bool env_verbose() {
  const char* v = std::getenv("SCLP_LOG");
  return v != nullptr && std::string(v) != "0" && !std::string(v).empty();
}

std::string od_text(const sclp::OdPair& w) {
  return "(" + std::to_string(w.origin) + "," + std::to_string(w.destination) + ")";
}

sclp::OdPair parse_od(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw sclp::InputError("--od expects s,t");
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw sclp::InputError("--od expects integer node ids: " + text);
  }
}

// Labels are written as JSON numbers when every label is an integer.
bool numeric_labels(const sclp::Network& net) {
  for (const auto& l : net.links()) {
    if (l.label.empty() || l.label.find_first_not_of("0123456789") != std::string::npos || l.label.size() > 15) {
      return false;
    }
  }
  return true;
}

json label_json(const sclp::Network& net, sclp::LinkId e) {
  if (numeric_labels(net)) return std::stoll(net.link(e).label);
  return net.link(e).label;
}

std::string labels_text(const sclp::Network& net, const std::vector<sclp::LinkId>& links) {
  std::string s;
  for (std::size_t i = 0; i < links.size(); ++i) s += (i ? "," : "") + net.link(links[i]).label;
  return s;
}

json placement_json(const sclp::Network& net, const sclp::PsiStructure& psi, const sclp::Placement& p) {
  json j;
  j["links"] = json::array();
  for (sclp::LinkId e : p.chosen_links) j["links"].push_back(label_json(net, e));
  j["objective"] = p.objective;
  j["covered"] = json::array();
  for (const auto& w : p.covered_ods) j["covered"].push_back({w.origin, w.destination});
  j["cuts"] = json::array();
  for (std::size_t g = 0; g < psi.ods.size(); ++g) {
    if (!p.chosen_cuts[g]) continue;
    json cut = json::array();
    for (sclp::LinkId e : psi.cuts[*p.chosen_cuts[g]].links) cut.push_back(label_json(net, e));
    j["cuts"].push_back({{"od", {psi.ods[g].origin, psi.ods[g].destination}}, {"links", cut}});
  }
  // Timing stays out of the file so reruns are byte-identical.
  j["stats"] = {{"status", p.stats.status}, {"nodes", p.stats.nodes}, {"dual_bound", p.stats.dual_bound}};
  j["network"] = net.fingerprint();
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw sclp::InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

int finish(const sclp::Placement& p) {
  return p.stats.status == sclp::to_string(sclp::SolveStatus::kBudgetLimitHit) ? kLimit : kOk;
}

std::vector<double> read_benefits(const std::string& path, const sclp::Network& net, const sclp::CutPool& pool) {
  std::ifstream in(path);
  if (!in) throw sclp::InputError("cannot open benefit file " + path);
  std::vector<double> u(pool.ods.size(), 0.0);
  std::vector<char> seen(pool.ods.size(), 0);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    sclp::NodeId s = 0, t = 0;
    double v = 0;
    if (!(ls >> s)) continue;
    if (!(ls >> t >> v)) throw sclp::ParseError("expected: origin destination benefit", no);
    if (!net.has_node(s) || !net.has_node(t)) throw sclp::ParseError("unknown node in benefit file", no);
    const auto g = pool.find_od({s, t});
    if (!g) throw sclp::ParseError("od " + od_text({s, t}) + " is not a centroid pair", no);
    u[*g] = v;
    seen[*g] = 1;
  }
  for (std::size_t g = 0; g < seen.size(); ++g)
    if (!seen[g]) throw sclp::InputError("benefit file has no entry for od " + od_text(pool.ods[g]));
  return u;
}

sclp::SolveOptions solve_options(bool verbose, std::optional<double> time_limit, std::optional<std::size_t> nodes) {
  sclp::SolveOptions o;
  o.log = verbose || env_verbose();
  o.time_limit_seconds = time_limit;
  o.node_limit = nodes;
  return o;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        out.push_back(std::stoul(item));
        continue;
      }
      // a:b:step
      const auto c2 = item.find(':', colon + 1);
      const std::size_t a = std::stoul(item.substr(0, colon));
      const std::size_t b = std::stoul(item.substr(colon + 1, c2 == std::string::npos ? std::string::npos : c2 - colon - 1));
      const std::size_t step = c2 == std::string::npos ? 1 : std::stoul(item.substr(c2 + 1));
      if (step == 0) throw sclp::InputError("range step must be positive");
      for (std::size_t k = a; k <= b; k += step) out.push_back(k);
    } catch (const std::logic_error&) {
      throw sclp::InputError("bad number list: " + text);
    }
  }
  if (out.empty()) throw sclp::InputError("empty number list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screen-line counter location: cut pools and sensor placement"};
  app.require_subcommand(1);

  NetworkArgs net_args;

  auto* enum_cmd = app.add_subcommand("enum", "enumerate minimal OD cuts into a pool file");
  add_network_options(enum_cmd, net_args, false);
  std::optional<std::size_t> max_cut;
  std::vector<std::string> od_flags;
  std::string out_path;
  enum_cmd->add_option("--max-cut-size", max_cut, "largest cut to keep (default: all)");
  enum_cmd->add_option("--od", od_flags, "restrict to OD pair s,t (repeatable)");
  enum_cmd->add_option("--out", out_path, "pool file (NDJSON)")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "degree bounds as JSON");
  add_network_options(bounds_cmd, net_args, false);

  auto* solve_cmd = app.add_subcommand("solve", "sensor placement");
  solve_cmd->require_subcommand(1);
  auto* min_cmd = solve_cmd->add_subcommand("min-links", "fewest links covering every OD pair");
  add_network_options(min_cmd, net_args, true);
  std::string filter = "lemma2";
  std::optional<double> time_limit;
  std::optional<std::size_t> node_limit;
  min_cmd->add_option("--filter", filter, "lemma2 | cap:N | none");
  min_cmd->add_option("--out", out_path, "placement JSON")->required();
  min_cmd->add_option("--time-limit", time_limit, "seconds");
  min_cmd->add_option("--node-limit", node_limit, "branch and bound nodes");

  auto* max_cmd = solve_cmd->add_subcommand("max-coverage", "most OD pairs covered within a link budget");
  add_network_options(max_cmd, net_args, true);
  std::optional<std::size_t> budget;
  std::string cap_text = "8";
  std::string benefit = "uniform";
  std::string sweep;
  std::string csv_path;
  max_cmd->add_option("--budget", budget, "link budget K");
  max_cmd->add_option("--cap", cap_text, "largest cut size (sweep: comma list)");
  max_cmd->add_option("--benefit", benefit, "uniform | path to 'origin destination benefit' lines");
  max_cmd->add_option("--out", out_path, "placement JSON");
  max_cmd->add_option("--sweep", sweep, "budgets, e.g. 4:48:4 or 4,8,12");
  max_cmd->add_option("--csv", csv_path, "sweep output (default stdout)");
  max_cmd->add_option("--time-limit", time_limit, "seconds per solve");
  max_cmd->add_option("--node-limit", node_limit, "nodes per solve");

  auto* verify_cmd = app.add_subcommand("verify", "check which OD pairs a placement covers");
  add_network_options(verify_cmd, net_args, false);
  std::string placement_path;
  verify_cmd->add_option("--placement", placement_path, "placement JSON")->required();

  auto* shared_cmd = app.add_subcommand("shared-cuts", "selected cuts shared by many OD pairs");
  add_network_options(shared_cmd, net_args, true);
  std::size_t min_shared = 1;
  shared_cmd->add_option("--budget", budget, "link budget K")->required();
  shared_cmd->add_option("--cap", cap_text, "largest cut size");
  shared_cmd->add_option("--min-shared", min_shared, "drop cuts shared by fewer OD pairs");
  shared_cmd->add_option("--out", out_path, "also write the placement JSON");
  shared_cmd->add_option("--time-limit", time_limit, "seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    const sclp::Network net = open_network(net_args);

    if (*enum_cmd) {
      std::vector<sclp::OdPair> ods;
      for (const auto& s : od_flags) ods.push_back(parse_od(s));
      const auto& q = net.centroids();
      auto is_centroid = [&](sclp::NodeId v) { return std::find(q.begin(), q.end(), v) != q.end(); };
      for (const auto& w : ods)
        if (!is_centroid(w.origin) || !is_centroid(w.destination) || w.origin == w.destination)
          throw sclp::InputError("--od " + od_text(w) + " is not a pair of distinct centroids");
      sclp::PoolBuildOptions opts{max_cut, ods, net_args.workers};
      const sclp::CutPool pool = sclp::build_pool(net, opts);
      sclp::save_pool_file(pool, out_path);
      std::cout << "size: with duplication / without duplication\n";
      for (const auto& r : sclp::size_histogram(pool))
        std::cout << r.size << ": " << r.with_duplication << " / " << r.without_duplication << "\n";
      std::cout << "total: " << pool.total_rows() << " / " << pool.cuts.size() << "\n";
      return kOk;
    }

    if (*bounds_cmd) {
      std::cout << sclp::to_json(sclp::compute_bounds(net)).dump(2) << "\n";
      return kOk;
    }

    if (*min_cmd) {
      sclp::SizeCap cap;
      if (filter.rfind("cap:", 0) == 0) {
        try {
          cap = std::stoul(filter.substr(4));
        } catch (const std::logic_error&) {
          throw sclp::InputError("bad filter " + filter);
        }
      } else if (filter != "lemma2" && filter != "none") {
        throw sclp::InputError("unknown filter " + filter + " (lemma2, cap:N, none)");
      }
      const sclp::BoundReport report = sclp::compute_bounds(net);
      sclp::CutPool pool;
      if (filter == "lemma2") {
        // No cut of an OD in the filtered pool is larger than its origin degree.
        std::size_t widest = 0;
        for (const auto& [q, d] : report.per_origin_cap) widest = std::max(widest, d);
        pool = sclp::lemma2_filter(open_pool(net_args, net, widest), report);
      } else {
        pool = open_pool(net_args, net, cap);
        const auto missing = sclp::uncoverable_ods(pool);
        if (!missing.empty()) throw sclp::InfeasibleError("od " + od_text(missing.front()) + " has no cut in the pool");
      }
      const sclp::Placement p =
          sclp::solve_min_links(net, pool, solve_options(net_args.verbose, time_limit, node_limit));
      const sclp::PsiStructure psi = sclp::build_psi(net, pool);
      write_json(placement_json(net, psi, p), out_path);
      std::cout << "objective: " << p.objective << "\n"
                << "links: " << labels_text(net, p.chosen_links) << "\n"
                << "covered: " << p.covered_ods.size() << " / " << pool.ods.size() << "\n"
                << "status: " << p.stats.status << ", nodes " << p.stats.nodes << ", " << std::fixed
                << std::setprecision(3) << p.stats.seconds << " s\n";
      return finish(p);
    }

    if (*max_cmd) {
      const std::vector<std::size_t> caps = parse_list(cap_text);
      const auto opts = solve_options(net_args.verbose, time_limit, node_limit);
      if (!sweep.empty()) {
        const std::vector<std::size_t> budgets = parse_list(sweep);
        std::ofstream file;
        if (!csv_path.empty()) {
          file.open(csv_path);
          if (!file) throw sclp::InputError("cannot write " + csv_path);
        }
        std::ostream& csv = csv_path.empty() ? std::cout : file;
        csv << "budget,cap,covered,total,ratio,seconds\n";
        int code = kOk;
        for (std::size_t cap : caps) {
          const sclp::CutPool pool = open_pool(net_args, net, cap);
          const std::vector<double> u =
              benefit == "uniform" ? std::vector<double>{} : read_benefits(benefit, net, pool);
          for (std::size_t k : budgets) {
            const sclp::Placement p = sclp::solve_max_coverage(net, pool, k, opts, u);
            if (finish(p) == kLimit) code = kLimit;
            const std::size_t total = pool.ods.size();
            csv << k << "," << cap << "," << p.covered_ods.size() << "," << total << "," << std::fixed
                << std::setprecision(6)
                << (total ? static_cast<double>(p.covered_ods.size()) / static_cast<double>(total) : 0.0) << ","
                << std::setprecision(3) << p.stats.seconds << "\n";
            csv.unsetf(std::ios::fixed);
          }
        }
        return code;
      }
      if (!budget) throw sclp::InputError("--budget or --sweep is required");
      if (out_path.empty()) throw sclp::InputError("--out is required");
      if (caps.size() != 1) throw sclp::InputError("a list of caps needs --sweep");
      const sclp::CutPool pool = open_pool(net_args, net, caps.front());
      const std::vector<double> u = benefit == "uniform" ? std::vector<double>{} : read_benefits(benefit, net, pool);
      const sclp::Placement p = sclp::solve_max_coverage(net, pool, *budget, opts, u);
      const sclp::PsiStructure psi = sclp::build_psi(net, pool, u);
      write_json(placement_json(net, psi, p), out_path);
      const std::size_t total = pool.ods.size();
      std::cout << "objective: " << p.objective << "\n"
                << "links: " << labels_text(net, p.chosen_links) << "\n"
                << "covered: " << p.covered_ods.size() << "/" << total << " ratio " << std::fixed
                << std::setprecision(4)
                << (total ? static_cast<double>(p.covered_ods.size()) / static_cast<double>(total) : 0.0) << "\n"
                << "status: " << p.stats.status << ", nodes " << p.stats.nodes << ", " << std::setprecision(3)
                << p.stats.seconds << " s\n";
      return finish(p);
    }

    if (*verify_cmd) {
      std::ifstream in(placement_path);
      if (!in) throw sclp::InputError("cannot open " + placement_path);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw sclp::InputError(placement_path + ": " + e.what());
      }
      if (!j.contains("links") || !j["links"].is_array()) throw sclp::InputError("placement has no links array");
      std::vector<sclp::LinkId> links;
      for (const auto& v : j["links"]) {
        const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
        links.push_back(net.link_by_label(label));
      }
      const sclp::CoverageReport r = sclp::verify_coverage(net, links);
      for (std::size_t i = 0; i < r.ods.size(); ++i)
        std::cout << r.ods[i].origin << "\t" << r.ods[i].destination << "\t"
                  << (r.covered[i] ? "covered" : "uncovered") << "\n";
      std::cout << "ratio: " << r.covered_count() << "/" << r.ods.size() << " = " << std::fixed
                << std::setprecision(4) << r.ratio() << "\n";
      return kOk;
    }

    if (*shared_cmd) {
      std::size_t cap = 0;
      try {
        cap = std::stoul(cap_text);
      } catch (const std::logic_error&) {
        throw sclp::InputError("bad --cap " + cap_text);
      }
      const sclp::CutPool pool = open_pool(net_args, net, cap);
      const sclp::Placement p =
          sclp::solve_max_coverage(net, pool, *budget, solve_options(net_args.verbose, time_limit, std::nullopt));
      const sclp::PsiStructure psi = sclp::build_psi(net, pool);
      if (!out_path.empty()) write_json(placement_json(net, psi, p), out_path);
      std::cout << "# objective " << p.objective << ", " << p.chosen_links.size() << " links\n"
                << "rank\tlinks\tshared\tforced\tavailable\n";
      std::size_t rank = 0;
      for (const auto& row : sclp::shared_cuts(psi, p, min_shared))
        std::cout << ++rank << "\t" << labels_text(net, row.links) << "\t" << row.shared << "\t" << row.forced
                  << "\t" << row.available << "\n";
      return finish(p);
    }
  } catch (const sclp::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const sclp::IntegrityError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kIntegrity;
  } catch (const sclp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
