// Command line tool: homology tables of real wonderful models from JSON
// arrangement descriptions, with optional disk caching of lattices and
// forest enumerations.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dcp/dcphom.hpp"
#include "dcp/errors.hpp"
#include "dcp/families.hpp"
#include "dcp/report.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string format = "text";
  int jobs = 1;
  int max_lattice = dcp::kDefaultMaxLattice;
  std::string cache_dir;
  unsigned seed = 0;
  int m = 2;                  // poset command
  std::string suite = "all";  // verify command
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dcp::input_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CachePayload {
  std::vector<dcp::Subspace> elems;
  std::vector<dcp::ForestOracle::EnumerationEntry> entries;
};

// Anything malformed or mismatched reads as a miss; the file is rewritten
// after the run.
std::optional<CachePayload> read_cache(const std::string& path, const dcp::BuildingSet& b,
                                       const std::string& key) {
  try {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("version").get<int>() != 1) return std::nullopt;
    if (j.at("arrangement_key").get<std::string>() != key) return std::nullopt;
    if (j.at("ambient_dim").get<int>() != b.ambient) return std::nullopt;
    CachePayload p;
    for (const auto& rows : j.at("lattice")) {
      dcp::Mat m;
      for (const auto& row : rows) {
        dcp::Vec v;
        for (const auto& x : row) v.push_back(dcp::parse_rat(x.get<std::string>()));
        m.push_back(std::move(v));
      }
      p.elems.push_back(m.empty() ? dcp::Subspace::zero(b.ambient)
                                  : dcp::Subspace::span(b.ambient, std::move(m)));
    }
    for (const auto& e : j.at("forests")) {
      dcp::ForestOracle::EnumerationEntry entry;
      entry.root_key = e.at("root").get<std::string>();
      entry.m = e.at("m").get<int>();
      for (const auto& f : e.at("forests")) {
        dcp::Forest forest;
        for (const auto& n : f) forest.nodes.push_back(n.get<int>());
        entry.forests.push_back(std::move(forest));
      }
      p.entries.push_back(std::move(entry));
    }
    return p;
  } catch (...) {
    return std::nullopt;
  }
}

// Arrangement, lattice, and oracle for one invocation. The oracle holds a
// reference to the building set, so sessions stay where they are built.
struct Session {
  dcp::BuildingSet b;
  std::string key;
  std::string cache_file;
  dcp::Lattice l;
  std::unique_ptr<dcp::ForestOracle> oracle_;

  Session(const Options& o, bool need_lattice)
      : b(dcp::load_arrangement(slurp(o.file), o.max_lattice)),
        key(dcp::arrangement_key(b)) {
    if (!o.cache_dir.empty()) cache_file = o.cache_dir + "/" + key + "-v1.json";
    if (!need_lattice) return;
    std::vector<dcp::ForestOracle::EnumerationEntry> preload;
    if (!cache_file.empty()) {
      if (auto hit = read_cache(cache_file, b, key)) {
        try {
          dcp::Lattice cand = dcp::lattice_from_elements(std::move(hit->elems));
          if (static_cast<int>(cand.size()) > o.max_lattice)
            throw dcp::resource_error("lattice exceeds element limit");
          l = std::move(cand);
          preload = std::move(hit->entries);
        } catch (const dcp::input_error&) {
          l = {};
          preload.clear();
        }
      }
    }
    if (l.elems.empty()) l = dcp::generate_lattice(b, o.max_lattice);
    oracle_ = std::make_unique<dcp::ForestOracle>(b);
    for (auto& e : preload) {
      try {
        oracle_->preload_enumeration(e.root_key, e.m, std::move(e.forests));
      } catch (const dcp::input_error&) {
        // stale entry, recomputed on demand
      }
    }
  }

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  dcp::ForestOracle& oracle() const { return *oracle_; }
};

// Best effort write: failures leave the run's output unaffected.
void save_cache(const Session& s) {
  if (s.cache_file.empty() || s.l.elems.empty()) return;
  try {
    namespace fs = std::filesystem;
    fs::path path(s.cache_file);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    ordered_json j;
    j["version"] = 1;
    j["arrangement_key"] = s.key;
    j["ambient_dim"] = s.b.ambient;
    ordered_json lat = ordered_json::array();
    for (const dcp::Subspace& e : s.l.elems) {
      ordered_json rows = ordered_json::array();
      for (const dcp::Vec& row : e.rows()) {
        ordered_json r = ordered_json::array();
        for (const dcp::Rat& x : row) r.push_back(dcp::rat_str(x));
        rows.push_back(std::move(r));
      }
      lat.push_back(std::move(rows));
    }
    j["lattice"] = std::move(lat);
    ordered_json fo = ordered_json::array();
    for (const auto& e : s.oracle().enumeration_snapshot()) {
      ordered_json entry;
      entry["root"] = e.root_key;
      entry["m"] = e.m;
      ordered_json fs_arr = ordered_json::array();
      for (const dcp::Forest& f : e.forests) fs_arr.push_back(f.nodes);
      entry["forests"] = std::move(fs_arr);
      fo.push_back(std::move(entry));
    }
    j["forests"] = std::move(fo);
    fs::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(2) << "\n";
    }
    fs::rename(tmp, path);
  } catch (...) {
  }
}

dcp::Report group_report(std::string title, const Session& s,
                         const std::vector<dcp::TableRow>& rows,
                         const std::map<long, dcp::HomologyGroup>& total) {
  dcp::Report r;
  r.title = std::move(title);
  r.key = s.key;
  for (const dcp::TableRow& row : rows) {
    dcp::ReportRow rr;
    rr.subspace = row.space.key();
    rr.dim = row.space.dim();
    rr.groups = row.groups;
    r.rows.push_back(std::move(rr));
  }
  r.total_groups = total;
  return r;
}

dcp::Report dims_report(std::string title, const Session& s,
                        const std::vector<dcp::DimsRow>& rows,
                        const std::vector<long>& total) {
  dcp::Report r;
  r.title = std::move(title);
  r.key = s.key;
  r.dims_only = true;
  for (const dcp::DimsRow& row : rows) {
    dcp::ReportRow rr;
    rr.subspace = row.space.key();
    rr.dim = row.space.dim();
    rr.dims = row.dims;
    r.rows.push_back(std::move(rr));
  }
  r.total_dims = total;
  return r;
}

dcp::Report gm_report(const Session& s) {
  dcp::Report r;
  r.title = "complement homology from interval cohomology";
  r.key = s.key;
  for (const auto& [deg, g] : dcp::gm_complement_homology(s.b, s.l))
    if (!g.trivial()) r.total_groups[deg] = g;
  dcp::PosetView v(s.b, s.l, 1);
  for (int e : v.members()) {
    const dcp::Subspace& sp = s.l.elems[e];
    dcp::ReportRow row;
    row.subspace = sp.key();
    row.dim = sp.dim();
    long d = sp.dim();
    for (const auto& [j, g] : dcp::interval_cohomology(v, e))
      if (!g.trivial()) row.groups[d - j] = g;
    r.rows.push_back(std::move(row));
  }
  return r;
}

int run_verify(const Session& s, const Options& o, bool json_out) {
  std::vector<dcp::SuiteResult> suites;
  bool all = o.suite == "all";
  if (all || o.suite == "chain") suites.push_back(dcp::verify_chain(s.b, s.l));
  if (all || o.suite == "operad") suites.push_back(dcp::verify_operad(s.b, s.l, o.seed));
  if (all || o.suite == "kunneth")
    suites.push_back(dcp::verify_kunneth(s.b, o.max_lattice, o.jobs));
  if (all || o.suite == "bockstein")
    suites.push_back(dcp::verify_bockstein(s.b, o.max_lattice, o.jobs));
  std::cout << (json_out ? dcp::verify_json(s.key, suites) : dcp::verify_text(s.key, suites));
  for (const dcp::SuiteResult& su : suites)
    if (!su.passed) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral homology of real wonderful models of subspace arrangements"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* c) {
    c->add_option("file", o.file, "arrangement description (JSON)")->required();
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    c->add_option("--jobs", o.jobs, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--max-lattice", o.max_lattice, "lattice element limit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--cache", o.cache_dir, "cache directory")->envname("DCPHOM_CACHE");
    c->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    return c;
  };

  CLI::App* closure_cmd =
      add_common(app.add_subcommand("closure", "closed building set of the input"));
  CLI::App* lattice_cmd =
      add_common(app.add_subcommand("lattice", "intersection lattice elements"));
  CLI::App* poset_cmd =
      add_common(app.add_subcommand("poset", "divisible grades of the lattice"));
  poset_cmd->add_option("--m", o.m, "divisibility")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  CLI::App* homology_cmd =
      add_common(app.add_subcommand("homology", "doubled homology table, unhalved"));
  CLI::App* mod2_cmd =
      add_common(app.add_subcommand("mod2", "mod-2 forest basis dimensions"));
  CLI::App* full_cmd =
      add_common(app.add_subcommand("full", "synthesized integral homology"));
  CLI::App* gm_cmd =
      add_common(app.add_subcommand("gm", "complement homology cross-check"));
  CLI::App* verify_cmd =
      add_common(app.add_subcommand("verify", "invariant verification suites"));
  verify_cmd->add_option("--suite", o.suite, "suite selection")
      ->check(CLI::IsMember({"all", "chain", "operad", "kunneth", "bockstein"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    bool json_out = o.format == "json";
    Session s(o, !app.got_subcommand(closure_cmd));
    int rc = 0;
    if (app.got_subcommand(closure_cmd)) {
      std::cout << (json_out ? dcp::closure_json(s.b) : dcp::closure_text(s.b));
    } else if (app.got_subcommand(lattice_cmd)) {
      std::cout << (json_out ? dcp::elements_json(s.b, s.l.elems, 0)
                             : dcp::elements_text("intersection lattice", s.b, s.l.elems));
    } else if (app.got_subcommand(poset_cmd)) {
      dcp::PosetView v(s.b, s.l, o.m);
      std::vector<dcp::Subspace> sel;
      for (int e : v.members()) sel.push_back(s.l.elems[e]);
      std::string title = "poset of " + std::to_string(o.m) + "-divisible elements";
      std::cout << (json_out ? dcp::elements_json(s.b, sel, o.m)
                             : dcp::elements_text(title, s.b, sel));
    } else if (app.got_subcommand(homology_cmd)) {
      dcp::PosetView v(s.b, s.l, 2);
      dcp::HomologyTable t = dcp::doubled_table(v, s.oracle(), o.jobs);
      dcp::Report r = group_report("doubled homology (unhalved)", s, t.rows, t.total);
      std::cout << (json_out ? dcp::render_json(r) : dcp::render_text(r));
    } else if (app.got_subcommand(mod2_cmd)) {
      dcp::Mod2Table t = dcp::mod2_table(s.l, s.oracle(), o.jobs);
      dcp::Report r = dims_report("mod-2 basis dimensions", s, t.rows, t.total);
      std::cout << (json_out ? dcp::render_json(r) : dcp::render_text(r));
    } else if (app.got_subcommand(full_cmd)) {
      dcp::ModelHomology m = dcp::model_homology(s.b, s.l, s.oracle(), o.jobs);
      dcp::Report r = group_report("integral homology", s, m.integral, m.integral_total);
      std::cout << (json_out ? dcp::render_json(r) : dcp::render_text(r));
    } else if (app.got_subcommand(gm_cmd)) {
      dcp::Report r = gm_report(s);
      std::cout << (json_out ? dcp::render_json(r) : dcp::render_text(r));
    } else if (app.got_subcommand(verify_cmd)) {
      rc = run_verify(s, o, json_out);
    }
    save_cache(s);
    return rc;
  } catch (const dcp::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const dcp::resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const dcp::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
