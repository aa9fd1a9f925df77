#include "dcp/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <sstream>

#include "dcp/errors.hpp"
#include "dcp/operad.hpp"

namespace dcp {

namespace {

using nlohmann::ordered_json;

ordered_json torsion_json(const std::vector<Int>& torsion) {
  ordered_json out = ordered_json::array();
  for (const Int& t : torsion) {
    if (t.fits_slong_p())
      out.push_back(t.get_si());
    else
      out.push_back(t.get_str());
  }
  return out;
}

ordered_json groups_json(const std::map<long, HomologyGroup>& groups) {
  ordered_json out = ordered_json::array();
  for (const auto& [deg, g] : groups) {
    ordered_json e;
    e["degree"] = deg;
    e["rank"] = g.rank;
    e["torsion"] = torsion_json(g.torsion);
    out.push_back(std::move(e));
  }
  return out;
}

ordered_json rows_json(const Subspace& s) {
  ordered_json rows = ordered_json::array();
  for (const Vec& r : s.rows()) {
    ordered_json row = ordered_json::array();
    for (const Rat& x : r) row.push_back(rat_str(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string space_text(const Subspace& s) {
  if (s.is_zero()) return "zero";
  std::ostringstream os;
  for (size_t i = 0; i < s.rows().size(); i++) {
    if (i) os << "; ";
    for (size_t j = 0; j < s.rows()[i].size(); j++) {
      if (j) os << ",";
      os << rat_str(s.rows()[i][j]);
    }
  }
  return "[" + os.str() + "]";
}

void dims_line(std::ostringstream& os, const std::vector<long>& dims) {
  os << "dims:";
  for (long d : dims) os << " " << d;
  if (dims.empty()) os << " (none)";
  os << "\n";
}

void group_lines(std::ostringstream& os, const std::map<long, HomologyGroup>& groups,
                 const char* indent) {
  if (groups.empty()) {
    os << indent << "(no groups)\n";
    return;
  }
  for (const auto& [deg, g] : groups)
    os << indent << "degree " << deg << ": " << g.str() << "\n";
}

std::vector<long> pad_to(const std::vector<long>& v, size_t n) {
  std::vector<long> out = v;
  out.resize(std::max(out.size(), n), 0);
  return out;
}

bool dims_equal(const std::vector<long>& a, const std::vector<long>& b) {
  size_t n = std::max(a.size(), b.size());
  return pad_to(a, n) == pad_to(b, n);
}

std::string dims_str(const std::vector<long>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); i++) os << (i ? " " : "") << v[i];
  os << ")";
  return os.str();
}

// Free plus odd torsion part of a group: 2-power factors dropped.
HomologyGroup strip_two_primary(const HomologyGroup& g) {
  HomologyGroup out;
  out.rank = g.rank;
  for (const Int& f : g.torsion) {
    Int t = f;
    while (t % 2 == 0) t /= 2;
    if (t > 1) out.torsion.push_back(t);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace

std::string arrangement_key(const BuildingSet& b) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : b.key()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render_json(const Report& r) {
  ordered_json j;
  j["arrangement_key"] = r.key;
  ordered_json graded = ordered_json::array();
  for (const ReportRow& row : r.rows) {
    ordered_json e;
    e["subspace"] = row.subspace;
    e["dims"] = row.dims;
    e["groups"] = groups_json(row.groups);
    graded.push_back(std::move(e));
  }
  j["graded"] = std::move(graded);
  j["total"] = r.dims_only ? ordered_json(r.total_dims) : groups_json(r.total_groups);
  return j.dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "arrangement " << r.key << "\n";
  os << r.title << ", " << r.rows.size() << " grades\n";
  for (size_t i = 0; i < r.rows.size(); i++) {
    const ReportRow& row = r.rows[i];
    os << "grade " << i << "  dim " << row.dim << "\n";
    if (r.dims_only) {
      os << "  ";
      dims_line(os, row.dims);
    } else {
      group_lines(os, row.groups, "  ");
    }
  }
  os << "total\n";
  if (r.dims_only) {
    os << "  ";
    dims_line(os, r.total_dims);
  } else {
    group_lines(os, r.total_groups, "  ");
  }
  return os.str();
}

std::string closure_json(const BuildingSet& b) {
  ordered_json j;
  j["arrangement_key"] = arrangement_key(b);
  j["ambient_dim"] = b.ambient;
  ordered_json gens = ordered_json::array();
  for (const Subspace& g : b.gens) gens.push_back(rows_json(g));
  j["generators"] = std::move(gens);
  return j.dump(2) + "\n";
}

std::string closure_text(const BuildingSet& b) {
  std::ostringstream os;
  os << "arrangement " << arrangement_key(b) << "\n";
  os << "closed building set, ambient dimension " << b.ambient << ", "
     << b.gens.size() << " generators\n";
  for (const Subspace& g : b.gens)
    os << "  dim " << g.dim() << "  " << space_text(g) << "\n";
  return os.str();
}

std::string elements_json(const BuildingSet& b, const std::vector<Subspace>& elems, int m) {
  ordered_json j;
  j["arrangement_key"] = arrangement_key(b);
  j["ambient_dim"] = b.ambient;
  if (m > 0) j["m"] = m;
  ordered_json es = ordered_json::array();
  for (const Subspace& e : elems) {
    ordered_json entry;
    entry["dim"] = e.dim();
    entry["rows"] = rows_json(e);
    es.push_back(std::move(entry));
  }
  j["elements"] = std::move(es);
  return j.dump(2) + "\n";
}

std::string elements_text(const std::string& title, const BuildingSet& b,
                          const std::vector<Subspace>& elems) {
  std::ostringstream os;
  os << "arrangement " << arrangement_key(b) << "\n";
  os << title << ", " << elems.size() << " elements\n";
  for (const Subspace& e : elems)
    os << "  dim " << e.dim() << "  " << space_text(e) << "\n";
  return os.str();
}

SuiteResult verify_chain(const BuildingSet& b, const Lattice& l) {
  SuiteResult s{"chain", 0, true, {}};
  ForestOracle o(b);
  for (int m : {2, 1}) {
    PosetView v(b, l, m);
    for (int e : v.members()) {
      std::map<long, HomologyGroup> cone = sigma_cone_homology(v, o, e);
      s.checks++;
      for (const auto& [deg, g] : cone)
        if (!g.trivial()) {
          s.passed = false;
          std::ostringstream note;
          note << "m=" << m << " grade " << e << ": cone homology " << g.str()
               << " at degree " << deg;
          s.notes.push_back(note.str());
        }
    }
  }
  return s;
}

namespace {

// Portable in-place Fisher-Yates driven by raw generator output.
template <typename T>
void shuffle_ids(std::vector<T>& v, std::mt19937& rng) {
  for (size_t i = v.size(); i > 1; i--)
    std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

SuiteResult verify_operad(const BuildingSet& b, const Lattice& l, unsigned seed) {
  SuiteResult s{"operad", 0, true, {}};
  std::mt19937 rng(seed);
  const Subspace& root = l.elems.back();
  std::vector<int> cands;
  for (size_t i = 1; i < l.elems.size(); i++)
    if (l.elems[i] != root) cands.push_back(static_cast<int>(i));
  shuffle_ids(cands, rng);

  std::string why;
  for (int m : {1, 2}) {
    WhitneyCtx big(b, m);
    size_t budget = m == 1 ? 5 : 3;
    for (size_t i = 0; i < cands.size() && i < budget; i++) {
      QuotientResult qr = quotient(b, l.elems[cands[i]]);
      if (qr.building.gens.empty()) continue;
      WhitneyCtx src(qr.building, m);
      OperadMap f = make_operad_map(src, big, qr.q);
      auto ker = restrict_ctx(big, f.kernel);
      s.checks++;
      if (!pullback_commutes(f, *ker, &why)) {
        s.passed = false;
        s.notes.push_back("pullback fails to commute: " + why);
      }
    }
  }

  WhitneyCtx big(b, 1);
  size_t pairs = 0;
  for (size_t i = 0; i < cands.size() && pairs < 4; i++) {
    QuotientResult gq = quotient(b, l.elems[cands[i]]);
    if (gq.building.gens.empty()) continue;
    WhitneyCtx mid(gq.building, 1);
    int pick = static_cast<int>(rng() % gq.building.gens.size());
    QuotientResult fq = quotient(gq.building, gq.building.gens[pick]);
    if (fq.building.gens.empty()) continue;
    WhitneyCtx low(fq.building, 1);
    long checked = 0;
    pairs++;
    if (!composition_law_ok(low, mid, big, fq.q, gq.q, &why, &checked)) {
      s.passed = false;
      s.notes.push_back("composition law fails: " + why);
    }
    s.checks += checked;
  }
  return s;
}

SuiteResult verify_kunneth(const BuildingSet& b, int max_lattice, int jobs) {
  SuiteResult s{"kunneth", 0, true, {}};
  BuildingSet circle = closure(2, {Subspace::full(2)});
  BuildingSet prod = arrangement_sum(b, circle);
  ModelHomology mb = model_homology(b, max_lattice, jobs);
  ModelHomology mp = model_homology(prod, max_lattice, jobs);

  // Circle factor: mod-2 dimensions (1, 1), reduced groups (Z, Z).
  std::vector<long> expect(mb.mod2.total.size() + 1, 0);
  for (size_t k = 0; k < mb.mod2.total.size(); k++) {
    expect[k] += mb.mod2.total[k];
    expect[k + 1] += mb.mod2.total[k];
  }
  s.checks++;
  if (!dims_equal(expect, mp.mod2.total)) {
    s.passed = false;
    s.notes.push_back("mod-2 polynomial does not multiply: expected " +
                      dims_str(expect) + ", got " + dims_str(mp.mod2.total));
  }

  long top = 0;
  for (const auto& [deg, g] : mp.reduced.total) top = std::max(top, deg);
  for (long k = 0; k <= top; k++) {
    HomologyGroup want;
    for (long j : {k - 1, k}) {
      auto it = mb.reduced.total.find(j);
      if (it == mb.reduced.total.end()) continue;
      HomologyGroup part = strip_two_primary(it->second);
      want.rank += part.rank;
      want.torsion.insert(want.torsion.end(), part.torsion.begin(), part.torsion.end());
    }
    std::sort(want.torsion.begin(), want.torsion.end());
    auto it = mp.reduced.total.find(k);
    HomologyGroup got = strip_two_primary(it == mp.reduced.total.end() ? HomologyGroup{}
                                                                       : it->second);
    s.checks++;
    if (!(want == got)) {
      s.passed = false;
      std::ostringstream note;
      note << "free+odd part at degree " << k << ": expected " << want.str()
           << ", got " << got.str();
      s.notes.push_back(note.str());
    }
  }
  return s;
}

SuiteResult verify_bockstein(const BuildingSet& b, int max_lattice, int jobs) {
  SuiteResult s{"bockstein", 0, true, {}};
  ModelHomology m = model_homology(b, max_lattice, jobs);
  s.checks++;
  std::vector<long> want = bockstein_prediction(m.integral_total);
  if (!dims_equal(want, m.bockstein.total)) {
    s.passed = false;
    s.notes.push_back("total bockstein dims " + dims_str(m.bockstein.total) +
                      " differ from prediction " + dims_str(want));
  }
  for (size_t i = 0; i < m.integral.size(); i++) {
    s.checks++;
    std::vector<long> row_want = bockstein_prediction(m.integral[i].groups);
    if (!dims_equal(row_want, m.bockstein.rows[i].dims)) {
      s.passed = false;
      std::ostringstream note;
      note << "grade " << i << ": bockstein dims " << dims_str(m.bockstein.rows[i].dims)
           << " differ from prediction " << dims_str(row_want);
      s.notes.push_back(note.str());
    }
  }
  return s;
}

std::string verify_json(const std::string& key, const std::vector<SuiteResult>& suites) {
  ordered_json j;
  j["arrangement_key"] = key;
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const SuiteResult& s : suites) {
    all = all && s.passed;
    ordered_json e;
    e["name"] = s.name;
    e["checks"] = s.checks;
    e["passed"] = s.passed;
    e["notes"] = s.notes;
    arr.push_back(std::move(e));
  }
  j["suites"] = std::move(arr);
  j["passed"] = all;
  return j.dump(2) + "\n";
}

std::string verify_text(const std::string& key, const std::vector<SuiteResult>& suites) {
  std::ostringstream os;
  os << "arrangement " << key << "\n";
  bool all = true;
  for (const SuiteResult& s : suites) {
    all = all && s.passed;
    os << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.checks
       << " checks\n";
    for (const std::string& n : s.notes) os << "  " << n << "\n";
  }
  os << (all ? "[PASS] verify complete\n" : "[FAIL] verify found violations\n");
  return os.str();
}

}  // namespace dcp
