#include "dcp/buildcore.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace dcp {

BuildingSet BuildingSet::make(int ambient, std::vector<Subspace> gens) {
  for (const auto& g : gens)
    if (g.ambient() != ambient)
      throw input_error("generator ambient dimension mismatch");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::erase_if(gens, [](const Subspace& g) { return g.is_zero(); });
  BuildingSet b;
  b.ambient = ambient;
  b.gens = std::move(gens);
  return b;
}

int BuildingSet::gen_index(const Subspace& g) const {
  auto it = std::lower_bound(gens.begin(), gens.end(), g);
  if (it != gens.end() && *it == g) return static_cast<int>(it - gens.begin());
  return -1;
}

std::string BuildingSet::key() const {
  std::ostringstream os;
  os << "ambient=" << ambient << '\n';
  for (const auto& g : gens) os << g.key() << '\n';
  return os.str();
}

int Lattice::find(const Subspace& s) const {
  auto it = index_.find(s.key());
  return it == index_.end() ? -1 : it->second;
}

int Lattice::require(const Subspace& s) const {
  int i = find(s);
  if (i < 0) throw internal_error("subspace not in lattice");
  return i;
}

Lattice generate_lattice(const BuildingSet& b, int max_elems) {
  std::map<std::string, Subspace> seen;
  Subspace z = Subspace::zero(b.ambient);
  seen.emplace(z.key(), z);
  std::vector<Subspace> work = {z};
  while (!work.empty()) {
    Subspace cur = std::move(work.back());
    work.pop_back();
    for (const auto& g : b.gens) {
      Subspace s = sum(cur, g);
      auto [it, fresh] = seen.emplace(s.key(), s);
      if (fresh) {
        if (static_cast<int>(seen.size()) > max_elems)
          throw resource_error("lattice exceeds element limit");
        work.push_back(it->second);
      }
    }
  }
  Lattice l;
  for (auto& [k, s] : seen) l.elems.push_back(std::move(s));
  std::sort(l.elems.begin(), l.elems.end());
  for (size_t i = 0; i < l.elems.size(); i++) l.index_[l.elems[i].key()] = static_cast<int>(i);
  return l;
}

Lattice lattice_from_elements(std::vector<Subspace> elems) {
  if (elems.empty() || !elems[0].is_zero())
    throw input_error("stored lattice must start with the zero subspace");
  Lattice l;
  l.elems = std::move(elems);
  for (size_t i = 0; i < l.elems.size(); i++) {
    if (i > 1 && !(l.elems[i - 1] < l.elems[i]))
      throw input_error("stored lattice elements out of order");
    l.index_[l.elems[i].key()] = static_cast<int>(i);
  }
  if (l.index_.size() != l.elems.size())
    throw input_error("stored lattice has duplicate elements");
  return l;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Sums of the current blocks, indexed by representative.
std::vector<std::pair<std::vector<int>, Subspace>> block_sums(
    const std::vector<Subspace>& gens, const std::vector<int>& members, Dsu& dsu) {
  std::map<int, std::vector<int>> groups;
  for (int m : members) groups[dsu.find(m)].push_back(m);
  std::vector<std::pair<std::vector<int>, Subspace>> out;
  for (auto& [rep, idxs] : groups) {
    Subspace s = Subspace::zero(gens[idxs[0]].ambient());
    for (int i : idxs) s = sum(s, gens[i]);
    out.emplace_back(idxs, std::move(s));
  }
  return out;
}

// Smallest subfamily (by size) whose sum contains g; empty if none.
std::vector<int> minimal_cover(const std::vector<Subspace>& sums, const Subspace& g) {
  size_t n = sums.size();
  std::vector<int> pick;
  std::vector<int> best;
  for (size_t want = 2; want <= n && best.empty(); want++) {
    std::vector<size_t> idx(want);
    std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t from) {
      if (pos == want) {
        Subspace s = Subspace::zero(g.ambient());
        for (size_t k = 0; k < want; k++) s = sum(s, sums[idx[k]]);
        if (s.contains(g)) {
          best.assign(idx.begin(), idx.end());
          return true;
        }
        return false;
      }
      for (size_t i = from; i < n; i++) {
        idx[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    rec(0, 0);
  }
  return best;
}

// Smallest non-independent subfamily; empty if the family is independent.
std::vector<int> minimal_dependent(const std::vector<Subspace>& sums) {
  size_t n = sums.size();
  std::vector<int> best;
  for (size_t want = 2; want <= n && best.empty(); want++) {
    std::vector<size_t> idx(want);
    std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t from) {
      if (pos == want) {
        std::vector<Subspace> fam;
        for (size_t k = 0; k < want; k++) fam.push_back(sums[idx[k]]);
        if (!is_direct(fam)) {
          best.assign(idx.begin(), idx.end());
          return true;
        }
        return false;
      }
      for (size_t i = from; i < n; i++) {
        idx[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    rec(0, 0);
  }
  return best;
}

}  // namespace

Decomposition decompose(const BuildingSet& b, const Subspace& c) {
  if (c.ambient() != b.ambient) throw input_error("ambient dimension mismatch");
  if (c.is_zero()) return {};
  std::vector<int> members;
  for (size_t i = 0; i < b.gens.size(); i++)
    if (c.contains(b.gens[i])) members.push_back(static_cast<int>(i));
  if (members.empty()) throw input_error("subspace is not a lattice element");
  Dsu dsu(static_cast<int>(b.gens.size()));

  // Generators with nonzero intersection always share a component.
  for (size_t a = 0; a < members.size(); a++)
    for (size_t bb = a + 1; bb < members.size(); bb++) {
      int i = members[a], j = members[bb];
      if (dsu.find(i) == dsu.find(j)) continue;
      if (!intersect(b.gens[i], b.gens[j]).is_zero()) dsu.unite(i, j);
    }

  for (;;) {
    auto blocks = block_sums(b.gens, members, dsu);
    std::vector<Subspace> sums;
    for (auto& [idxs, s] : blocks) sums.push_back(s);

    bool merged = false;
    for (int m : members) {
      const Subspace& g = b.gens[m];
      std::vector<int> covering;
      for (size_t k = 0; k < sums.size(); k++)
        if (sums[k].contains(g)) covering.push_back(static_cast<int>(k));
      if (covering.size() == 1) continue;
      std::vector<int> to_merge = covering;
      if (to_merge.empty()) to_merge = minimal_cover(sums, g);
      if (to_merge.size() < 2) throw internal_error("decomposition cover search failed");
      for (size_t k = 1; k < to_merge.size(); k++)
        dsu.unite(blocks[to_merge[0]].first[0], blocks[to_merge[k]].first[0]);
      merged = true;
      break;
    }
    if (merged) continue;

    if (!is_direct(sums)) {
      std::vector<int> dep = minimal_dependent(sums);
      if (dep.size() < 2) throw internal_error("decomposition dependence search failed");
      for (size_t k = 1; k < dep.size(); k++)
        dsu.unite(blocks[dep[0]].first[0], blocks[dep[k]].first[0]);
      continue;
    }

    Subspace total = Subspace::zero(b.ambient);
    for (const auto& s : sums) total = sum(total, s);
    if (total != c) throw input_error("subspace is not a lattice element");
    std::sort(sums.begin(), sums.end());
    return sums;
  }
}

bool is_decomposition(const BuildingSet& b, const std::vector<Subspace>& parts) {
  for (const auto& p : parts)
    if (p.is_zero()) return false;
  if (!is_direct(parts)) return false;
  Subspace total = Subspace::zero(b.ambient);
  for (const auto& p : parts) total = sum(total, p);
  for (const auto& g : b.gens) {
    if (!total.contains(g)) continue;
    int hits = 0;
    for (const auto& p : parts)
      if (p.contains(g)) hits++;
    if (hits != 1) return false;
  }
  return true;
}

bool is_indecomposable(const BuildingSet& b, const Subspace& c) {
  return decompose(b, c).size() == 1;
}

BuildingSet closure(int ambient, const std::vector<Subspace>& subs, int max_elems) {
  BuildingSet raw = BuildingSet::make(ambient, subs);
  Lattice l = generate_lattice(raw, max_elems);
  std::vector<Subspace> gens;
  for (const auto& c : l.elems)
    if (!c.is_zero() && is_indecomposable(raw, c)) gens.push_back(c);
  return BuildingSet::make(ambient, std::move(gens));
}

bool is_building(const BuildingSet& b, const Lattice& l) {
  for (const auto& c : l.elems) {
    if (c.is_zero()) continue;
    Decomposition parts = decompose(b, c);
    if (parts.size() == 1 && !b.has_gen(c)) return false;
  }
  return true;
}

Subspace meet(const BuildingSet& b, const Subspace& c, const Subspace& d) {
  Subspace cap = intersect(c, d);
  Subspace m = Subspace::zero(b.ambient);
  for (const auto& g : b.gens)
    if (cap.contains(g)) m = sum(m, g);
  return m;
}

BuildingSet restrict_to(const BuildingSet& b, const Subspace& w) {
  std::vector<Subspace> gens;
  for (const auto& g : b.gens)
    if (w.contains(g)) gens.push_back(g);
  return BuildingSet::make(b.ambient, std::move(gens));
}

DualMap quotient_map(const Subspace& c) {
  int n = c.ambient();
  const Mat& rows = c.rows();
  std::vector<int> pivots;
  std::vector<bool> is_pivot(n, false);
  for (const auto& row : rows) {
    int p = 0;
    while (p < n && row[p] == 0) p++;
    pivots.push_back(p);
    is_pivot[p] = true;
  }
  std::vector<int> keep;
  for (int j = 0; j < n; j++)
    if (!is_pivot[j]) keep.push_back(j);
  DualMap q;
  q.dom = n;
  q.cod = n - c.dim();
  q.mat.assign(n, Vec(q.cod, 0));
  for (size_t k = 0; k < keep.size(); k++) q.mat[keep[k]][k] = 1;
  for (size_t i = 0; i < rows.size(); i++)
    for (size_t k = 0; k < keep.size(); k++) q.mat[pivots[i]][k] = -rows[i][keep[k]];
  return q;
}

QuotientResult quotient(const BuildingSet& b, const Subspace& c, int max_elems) {
  QuotientResult r;
  r.q = quotient_map(c);
  std::vector<Subspace> images;
  for (const auto& g : b.gens) {
    if (c.contains(g)) continue;
    images.push_back(pullback(r.q, g));
  }
  BuildingSet raw = BuildingSet::make(r.q.cod, images);
  r.building = closure(r.q.cod, raw.gens, max_elems);
  r.closure_changed = !(raw.gens == r.building.gens);
  return r;
}

std::string map_class_name(MapClass c) {
  switch (c) {
    case MapClass::invalid:
      return "invalid";
    case MapClass::morphism:
      return "morphism";
    case MapClass::purely_operadic:
      return "purely operadic";
    case MapClass::weak:
      return "weak";
  }
  return "?";
}

MapClass classify_map(const BuildingSet& src, const BuildingSet& dst,
                      const Lattice& dst_lattice, const DualMap& fstar) {
  if (fstar.dom != dst.ambient || fstar.cod != src.ambient)
    throw input_error("map ambient dimensions do not match arrangements");
  std::vector<Subspace> images;
  bool all_nonzero = true;
  for (const auto& g : dst.gens) {
    Subspace im = pullback(fstar, g);
    if (im.is_zero()) {
      all_nonzero = false;
      continue;
    }
    if (!src.has_gen(im)) return MapClass::invalid;
    images.push_back(im);
  }
  if (all_nonzero) return MapClass::morphism;
  BuildingSet induced = BuildingSet::make(src.ambient, images);
  Subspace ker = kernel_dual(fstar);
  if (dst_lattice.find(ker) >= 0 && induced.gens == src.gens)
    return MapClass::purely_operadic;
  return MapClass::weak;
}

bool hyperplane_adjoinable(const BuildingSet& b, const Lattice& l, const Vec& v) {
  for (const auto& c : l.elems) {
    if (c.is_zero() || !c.contains(v)) continue;
    bool ok = false;
    for (const auto& g : b.gens)
      if (g.contains(v) && c.contains(g)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace dcp
