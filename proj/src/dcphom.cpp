#include "dcp/dcphom.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <thread>
#include <utility>

#include "dcp/errors.hpp"

namespace dcp {

namespace {

using F2Mat = std::vector<std::vector<unsigned char>>;

long f2_rank(F2Mat m) {
  if (m.empty() || m[0].empty()) return 0;
  size_t rows = m.size();
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c])
        for (size_t j = c; j < cols; ++j) m[i][j] ^= m[r][j];
    ++r;
  }
  return static_cast<long>(r);
}

void trim(std::vector<long>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void accumulate(std::vector<long>& total, const std::vector<long>& dims) {
  if (total.size() < dims.size()) total.resize(dims.size(), 0);
  for (size_t i = 0; i < dims.size(); ++i) total[i] += dims[i];
}

// key() fills its cache on first use; fill every shared subspace before
// handing them to concurrent readers.
void warm_keys(const BuildingSet& b, const Lattice& l) {
  for (const Subspace& g : b.gens) (void)g.key();
  for (const Subspace& e : l.elems) (void)e.key();
}

// rows[i] = fn(i, oracle) for i in [0, n). With jobs > 1 each worker owns
// a copy of the oracle (its memo tables are not shareable); rows land by
// index, so the merged order is the input order no matter how the work is
// scheduled. Worker enumerations are folded back into the caller's oracle.
template <typename Row, typename Fn>
std::vector<Row> grade_rows(const ForestOracle& o, long n, int jobs, Fn fn) {
  std::vector<Row> rows(static_cast<size_t>(n));
  if (jobs > n) jobs = static_cast<int>(n);
  if (jobs <= 1) {
    for (long i = 0; i < n; ++i) rows[i] = fn(i, o);
    return rows;
  }
  std::vector<std::unique_ptr<ForestOracle>> oracles;
  for (int w = 0; w < jobs; ++w) oracles.push_back(std::make_unique<ForestOracle>(o));
  std::atomic<long> next{0};
  std::mutex mu;
  long err_at = -1;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      while (true) {
        long i = next.fetch_add(1);
        if (i >= n) break;
        try {
          rows[i] = fn(i, *oracles[w]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (err_at < 0 || i < err_at) {
            err_at = i;
            err = std::current_exception();
          }
          next.store(n);
          break;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  for (const auto& w : oracles) o.absorb_enumerations(*w);
  return rows;
}

}  // namespace

HomologyTable doubled_table(const PosetView& v, const ForestOracle& o, int jobs) {
  if (jobs > 1) warm_keys(v.building(), v.lattice());
  const std::vector<int>& members = v.members();
  std::vector<TableRow> rows = grade_rows<TableRow>(
      o, static_cast<long>(members.size()), jobs,
      [&](long i, const ForestOracle& w) {
        TableRow row;
        row.grade = members[i];
        row.space = v.lattice().elems[members[i]];
        row.groups = doubled_forest_cohomology(v, w, members[i]);
        return row;
      });
  HomologyTable t;
  for (TableRow& row : rows) {
    for (const auto& [deg, g] : row.groups)
      if (!g.trivial()) add_group(t.total, deg, g);
    t.rows.push_back(std::move(row));
  }
  return t;
}

HomologyGroup halve_even_torsion(const HomologyGroup& g) {
  HomologyGroup out;
  out.rank = g.rank;
  for (const Int& f : g.torsion) {
    Int h = f % 2 == 0 ? Int(f / 2) : f;
    if (h > 1) out.torsion.push_back(h);
  }
  return out;
}

HomologyTable halve_even_torsion(const HomologyTable& t) {
  HomologyTable out;
  for (const TableRow& row : t.rows) {
    TableRow r;
    r.grade = row.grade;
    r.space = row.space;
    for (const auto& [deg, g] : row.groups) r.groups[deg] = halve_even_torsion(g);
    out.rows.push_back(std::move(r));
  }
  for (const auto& [deg, g] : t.total) {
    HomologyGroup h = halve_even_torsion(g);
    if (!h.trivial()) out.total[deg] = h;
  }
  return out;
}

std::vector<std::vector<WeightedForest>> weighted_forests(const ForestOracle& o,
                                                          const Subspace& root) {
  std::vector<std::vector<WeightedForest>> out;
  for (const Forest& f : o.forests(root, 1)) {
    std::vector<int> caps(f.nodes.size());
    bool barren = false;
    for (size_t i = 0; i < f.nodes.size(); ++i) {
      const Subspace& g = o.building().gens[f.nodes[i]];
      caps[i] = g.dim() - o.child(f, f.nodes[i]).dim() - 1;
      if (caps[i] < 1) {
        barren = true;
        break;
      }
    }
    if (barren) continue;
    std::vector<int> w(f.nodes.size(), 1);
    while (true) {
      WeightedForest wf{f, w};
      long k = wf.degree();
      if (static_cast<long>(out.size()) <= k) out.resize(k + 1);
      out[k].push_back(std::move(wf));
      size_t i = 0;
      while (i < w.size() && w[i] == caps[i]) {
        w[i] = 1;
        ++i;
      }
      if (i == w.size()) break;
      ++w[i];
    }
  }
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

std::vector<WeightedForest> bockstein_add(const ForestOracle& o,
                                          const Subspace& root,
                                          const WeightedForest& w) {
  std::vector<WeightedForest> out;
  const BuildingSet& b = o.building();
  for (int g = 0; g < static_cast<int>(b.gens.size()); ++g) {
    if (!root.contains(b.gens[g])) continue;
    if (std::binary_search(w.forest.nodes.begin(), w.forest.nodes.end(), g))
      continue;
    if (!o.valid_extension(w.forest.nodes, g)) continue;
    Forest fg;
    fg.nodes = w.forest.nodes;
    auto pos_it = std::upper_bound(fg.nodes.begin(), fg.nodes.end(), g);
    size_t pos = static_cast<size_t>(pos_it - fg.nodes.begin());
    fg.nodes.insert(pos_it, g);
    int e = b.gens[g].dim() - o.child(fg, g).dim();
    if (e <= 0 || e % 2 != 0) continue;
    int par = o.parent(fg, g);
    std::vector<int> wts(fg.nodes.size());
    bool vanished = false;
    for (size_t i = 0; i < fg.nodes.size(); ++i) {
      if (i == pos) {
        wts[i] = e - 1;
        continue;
      }
      int val = w.weights[i < pos ? i : i - 1];
      if (fg.nodes[i] == par) {
        val -= e;
        if (val <= 0) {
          vanished = true;
          break;
        }
      }
      wts[i] = val;
    }
    if (vanished) continue;
    out.push_back(WeightedForest{std::move(fg), std::move(wts)});
  }
  return out;
}

std::vector<WeightedForest> bockstein_drop(const WeightedForest& w) {
  std::vector<WeightedForest> out;
  for (size_t i = 0; i < w.weights.size(); ++i) {
    if (w.weights[i] % 2 != 0) continue;
    WeightedForest t = w;
    --t.weights[i];
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<long> bockstein_dims(const ForestOracle& o, const Subspace& root) {
  auto basis = weighted_forests(o, root);
  long top = static_cast<long>(basis.size()) - 1;
  if (top < 0) return {};
  std::vector<std::map<WeightedForest, int>> index(top + 1);
  for (long k = 0; k <= top; ++k)
    for (size_t i = 0; i < basis[k].size(); ++i)
      index[k][basis[k][i]] = static_cast<int>(i);
  std::vector<F2Mat> beta(top + 2);
  for (long k = 1; k <= top; ++k) {
    beta[k].assign(basis[k - 1].size(),
                   std::vector<unsigned char>(basis[k].size(), 0));
    for (size_t j = 0; j < basis[k].size(); ++j) {
      std::vector<WeightedForest> terms = bockstein_add(o, root, basis[k][j]);
      std::vector<WeightedForest> drops = bockstein_drop(basis[k][j]);
      terms.insert(terms.end(), drops.begin(), drops.end());
      for (const WeightedForest& t : terms) {
        if (t.degree() != k - 1)
          throw internal_error("bockstein term has the wrong degree");
        auto it = index[k - 1].find(t);
        if (it == index[k - 1].end())
          throw internal_error("bockstein image leaves the weighted basis");
        beta[k][it->second][j] ^= 1;
      }
    }
  }
  for (long k = 1; k < top; ++k) {
    const F2Mat& a = beta[k];
    const F2Mat& b = beta[k + 1];
    if (a.empty() || b.empty()) continue;
    for (size_t j = 0; j < b[0].size(); ++j)
      for (size_t r = 0; r < a.size(); ++r) {
        unsigned char acc = 0;
        for (size_t i = 0; i < b.size(); ++i)
          acc ^= static_cast<unsigned char>(a[r][i] & b[i][j]);
        if (acc)
          throw internal_error("bockstein differential does not square to zero");
      }
  }
  std::vector<long> rank(top + 2, 0);
  for (long k = 1; k <= top; ++k) rank[k] = f2_rank(beta[k]);
  std::vector<long> out(top + 1, 0);
  for (long k = 0; k <= top; ++k)
    out[k] = static_cast<long>(basis[k].size()) - rank[k] - rank[k + 1];
  trim(out);
  return out;
}

Mod2Table mod2_table(const Lattice& l, const ForestOracle& o, int jobs) {
  if (jobs > 1) warm_keys(o.building(), l);
  std::vector<DimsRow> rows = grade_rows<DimsRow>(
      o, static_cast<long>(l.elems.size()), jobs,
      [&](long i, const ForestOracle& w) {
        DimsRow row;
        row.grade = static_cast<int>(i);
        row.space = l.elems[i];
        for (const auto& level : weighted_forests(w, l.elems[i]))
          row.dims.push_back(static_cast<long>(level.size()));
        trim(row.dims);
        return row;
      });
  Mod2Table t;
  for (DimsRow& row : rows) {
    accumulate(t.total, row.dims);
    t.rows.push_back(std::move(row));
  }
  trim(t.total);
  return t;
}

BocksteinTable bockstein_table(const Lattice& l, const ForestOracle& o, int jobs) {
  if (jobs > 1) warm_keys(o.building(), l);
  std::vector<DimsRow> rows = grade_rows<DimsRow>(
      o, static_cast<long>(l.elems.size()), jobs,
      [&](long i, const ForestOracle& w) {
        DimsRow row;
        row.grade = static_cast<int>(i);
        row.space = l.elems[i];
        row.dims = bockstein_dims(w, l.elems[i]);
        return row;
      });
  BocksteinTable t;
  for (DimsRow& row : rows) {
    accumulate(t.total, row.dims);
    t.rows.push_back(std::move(row));
  }
  trim(t.total);
  return t;
}

std::vector<long> bockstein_prediction(const std::map<long, HomologyGroup>& groups) {
  long top = -1;
  for (const auto& [deg, g] : groups)
    if (!g.trivial()) top = std::max(top, deg);
  if (top < 0) return {};
  std::vector<long> out(top + 2, 0);
  for (const auto& [deg, g] : groups) {
    if (g.trivial()) continue;
    long fours = 0;
    for (const Int& f : g.torsion)
      if (f % 4 == 0) ++fours;
    out[deg] += g.rank + fours;
    out[deg + 1] += fours;
  }
  trim(out);
  return out;
}

std::map<long, HomologyGroup> synthesize_integral(
    const std::map<long, HomologyGroup>& table, const std::vector<long>& mod2) {
  long top = static_cast<long>(mod2.size()) - 1;
  for (const auto& [deg, g] : table)
    if (!g.trivial()) top = std::max(top, deg);
  std::map<long, HomologyGroup> out;
  long s_prev = 0;
  long p_prev = 0;
  for (long k = 0; k <= top + 1; ++k) {
    long r = 0;
    long p = 0;
    std::vector<Int> kept;
    auto it = table.find(k);
    if (it != table.end()) {
      r = it->second.rank;
      for (const Int& f : it->second.torsion) {
        unsigned long v2 = mpz_scan1(f.get_mpz_t(), 0);
        Int odd = f >> v2;
        if (v2 >= 2) {
          kept.push_back(Int(1) << v2);
          ++p;
        }
        if (odd > 1) kept.push_back(odd);
      }
    }
    long bk = k < static_cast<long>(mod2.size()) ? mod2[k] : 0;
    long s = bk - r - p - s_prev - p_prev;
    if (s < 0)
      throw internal_error("mod-2 dimensions are inconsistent with the homology table");
    for (long i = 0; i < s; ++i) kept.push_back(2);
    HomologyGroup g{r, std::move(kept)};
    if (!g.trivial()) add_group(out, k, g);
    s_prev = s;
    p_prev = p;
  }
  return out;
}

ModelHomology model_homology(const BuildingSet& b, int max_lattice, int jobs) {
  Lattice l = generate_lattice(b, max_lattice);
  ForestOracle o(b);
  return model_homology(b, l, o, jobs);
}

ModelHomology model_homology(const BuildingSet& b, const Lattice& l,
                             const ForestOracle& o, int jobs) {
  ModelHomology m;
  PosetView v(b, l, 2);
  m.table = doubled_table(v, o, jobs);
  m.reduced = halve_even_torsion(m.table);
  m.mod2 = mod2_table(l, o, jobs);
  m.bockstein = bockstein_table(l, o, jobs);
  std::map<int, const TableRow*> by_grade;
  for (const TableRow& row : m.table.rows) by_grade[row.grade] = &row;
  const std::map<long, HomologyGroup> none;
  for (size_t i = 0; i < l.elems.size(); ++i) {
    TableRow row;
    row.grade = static_cast<int>(i);
    row.space = l.elems[i];
    auto it = by_grade.find(row.grade);
    row.groups = synthesize_integral(it == by_grade.end() ? none : it->second->groups,
                                     m.mod2.rows[i].dims);
    for (const auto& [deg, g] : row.groups)
      if (!g.trivial()) add_group(m.integral_total, deg, g);
    m.integral.push_back(std::move(row));
  }
  return m;
}

}  // namespace dcp
