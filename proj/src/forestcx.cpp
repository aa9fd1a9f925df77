#include "dcp/forestcx.hpp"

#include <algorithm>
#include <functional>

namespace dcp {

ForestOracle::ForestOracle(const BuildingSet& b) : b_(b) {
  int n = static_cast<int>(b.gens.size());
  contains_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) contains_[i][j] = b.gens[i].contains(b.gens[j]);
}

const Subspace& ForestOracle::sum_of(const std::vector<int>& nodes) const {
  std::vector<int> key = nodes;
  std::sort(key.begin(), key.end());
  auto it = sums_.find(key);
  if (it != sums_.end()) return it->second;
  Subspace s = Subspace::zero(b_.ambient);
  for (int g : key) s = sum(s, b_.gens[g]);
  return sums_.emplace(std::move(key), std::move(s)).first->second;
}

bool ForestOracle::antichain_ok(const std::vector<int>& parts) const {
  std::vector<int> key = parts;
  std::sort(key.begin(), key.end());
  const Subspace& total = sum_of(key);
  int dim_sum = 0;
  for (int g : key) dim_sum += b_.gens[g].dim();
  if (dim_sum != total.dim()) return false;

  auto it = gen_in_sum_.find(key);
  if (it == gen_in_sum_.end()) {
    std::vector<char> in(b_.gens.size(), 0);
    for (size_t g = 0; g < b_.gens.size(); g++) in[g] = total.contains(b_.gens[g]) ? 1 : 0;
    it = gen_in_sum_.emplace(key, std::move(in)).first;
  }
  const std::vector<char>& in = it->second;
  for (size_t g = 0; g < b_.gens.size(); g++) {
    if (!in[g]) continue;
    int hits = 0;
    for (int p : key)
      if (contains_[p][static_cast<int>(g)]) hits++;
    if (hits != 1) return false;
  }
  return true;
}

bool ForestOracle::is_forest(const std::vector<int>& nodes) const {
  std::vector<int> anti;
  std::function<bool(size_t)> walk = [&](size_t at) {
    if (anti.size() >= 2 && !antichain_ok(anti)) return false;
    for (size_t i = at; i < nodes.size(); i++) {
      bool ok = true;
      for (int h : anti)
        if (comparable(h, nodes[i])) ok = false;
      if (!ok) continue;
      anti.push_back(nodes[i]);
      bool good = walk(i + 1);
      anti.pop_back();
      if (!good) return false;
    }
    return true;
  };
  return walk(0);
}

bool ForestOracle::valid_extension(const std::vector<int>& nodes, int g) const {
  std::vector<int> incomp;
  for (int h : nodes)
    if (!comparable(h, g)) incomp.push_back(h);
  std::vector<int> anti = {g};
  std::function<bool(size_t)> walk = [&](size_t at) {
    if (anti.size() >= 2 && !antichain_ok(anti)) return false;
    for (size_t i = at; i < incomp.size(); i++) {
      bool ok = true;
      for (int h : anti)
        if (h != g && comparable(h, incomp[i])) ok = false;
      if (!ok) continue;
      anti.push_back(incomp[i]);
      bool good = walk(i + 1);
      anti.pop_back();
      if (!good) return false;
    }
    return true;
  };
  return walk(0);
}

Subspace ForestOracle::root(const Forest& f) const { return sum_of(f.nodes); }

std::vector<int> ForestOracle::maximal_nodes(const Forest& f) const {
  std::vector<int> out;
  for (int g : f.nodes) {
    bool maximal = true;
    for (int h : f.nodes)
      if (h != g && contains_[h][g]) maximal = false;
    if (maximal) out.push_back(g);
  }
  return out;
}

Subspace ForestOracle::child(const Forest& f, int g) const {
  std::vector<int> below;
  for (int h : f.nodes)
    if (h != g && contains_[g][h]) below.push_back(h);
  return sum_of(below);
}

int ForestOracle::parent(const Forest& f, int g) const {
  int best = -1;
  for (int h : f.nodes) {
    if (h == g || !contains_[h][g]) continue;
    if (best < 0 || b_.gens[h].dim() < b_.gens[best].dim()) best = h;
  }
  return best;
}

const std::vector<Forest>& ForestOracle::forests(const Subspace& root, int m) const {
  auto key = std::make_pair(root.key(), m);
  auto it = forest_memo_.find(key);
  if (it == forest_memo_.end())
    it = forest_memo_.emplace(std::move(key), enumerate_forests(*this, root, m)).first;
  return it->second;
}

std::vector<ForestOracle::EnumerationEntry> ForestOracle::enumeration_snapshot() const {
  std::vector<EnumerationEntry> out;
  for (const auto& [key, fs] : forest_memo_)
    out.push_back({key.first, key.second, fs});
  return out;
}

void ForestOracle::preload_enumeration(const std::string& root_key, int m,
                                       std::vector<Forest> fs) const {
  int n = static_cast<int>(b_.gens.size());
  for (const Forest& f : fs)
    for (size_t i = 0; i < f.nodes.size(); i++) {
      if (f.nodes[i] < 0 || f.nodes[i] >= n)
        throw input_error("preloaded forest node out of range");
      if (i > 0 && f.nodes[i] <= f.nodes[i - 1])
        throw input_error("preloaded forest nodes not ascending");
    }
  forest_memo_[{root_key, m}] = std::move(fs);
}

void ForestOracle::absorb_enumerations(const ForestOracle& other) const {
  for (const auto& [key, fs] : other.forest_memo_)
    forest_memo_.emplace(key, fs);
}

std::vector<Forest> enumerate_forests(const ForestOracle& o, const Subspace& root, int m) {
  const BuildingSet& b = o.building();
  if (root.ambient() != b.ambient) throw input_error("forest root has wrong ambient dimension");
  if (root.is_zero()) return {Forest{}};

  std::vector<int> inside;
  for (size_t g = 0; g < b.gens.size(); g++)
    if (root.contains(b.gens[g])) inside.push_back(static_cast<int>(g));
  if (o.sum_of(inside) != root) throw input_error("forest root is not a lattice element");

  std::vector<int> eligible;
  for (int g : inside)
    if (m <= 1 || b.gens[g].dim() % m == 0) eligible.push_back(g);

  std::vector<Forest> out;
  std::vector<int> cur;
  std::function<void(size_t)> grow = [&](size_t at) {
    if (!cur.empty() && o.sum_of(cur) == root) out.push_back(Forest{cur});
    for (size_t i = at; i < eligible.size(); i++) {
      if (!o.valid_extension(cur, eligible[i])) continue;
      cur.push_back(eligible[i]);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(0);
  return out;
}

const std::vector<Forest>& ForestComplex::basis_at(long k) const {
  static const std::vector<Forest> empty;
  long i = k - cx.min_deg;
  if (i < 0 || i >= static_cast<long>(basis.size())) return empty;
  return basis[i];
}

int ForestComplex::forest_index(const Forest& f) const {
  long i = f.size() - cx.min_deg;
  if (i < 0 || i >= static_cast<long>(index_.size())) return -1;
  auto it = index_[i].find(f);
  return it == index_[i].end() ? -1 : it->second;
}

ForestComplex forest_complex(const PosetView& v, const ForestOracle& o, int root,
                             bool doubled) {
  ForestComplex fc;
  fc.root = root;
  fc.doubled = doubled;
  if (root == 0) {
    fc.cx.min_deg = 0;
    fc.cx.dims = {1};
    fc.cx.d = {IntMatrix{}};
    fc.basis = {{Forest{}}};
    fc.index_.resize(1);
    fc.index_[0][Forest{}] = 0;
    return fc;
  }
  if (!v.in_poset(root)) throw input_error("forest root is not in the divisible poset");

  const std::vector<Forest>& all = o.forests(v.lattice().elems[root], v.m());
  if (all.empty()) throw internal_error("poset member admits no forest");
  long kmin = all.front().size(), kmax = all.front().size();
  for (const Forest& f : all) {
    kmin = std::min(kmin, f.size());
    kmax = std::max(kmax, f.size());
  }
  fc.cx.min_deg = kmin;
  fc.basis.resize(kmax - kmin + 1);
  fc.index_.resize(kmax - kmin + 1);
  for (const Forest& f : all) fc.basis[f.size() - kmin].push_back(f);
  for (auto& level : fc.basis) std::sort(level.begin(), level.end());
  for (size_t i = 0; i < fc.basis.size(); i++) {
    fc.cx.dims.push_back(static_cast<long>(fc.basis[i].size()));
    for (size_t j = 0; j < fc.basis[i].size(); j++)
      fc.index_[i][fc.basis[i][j]] = static_cast<int>(j);
  }

  Int unit = doubled ? 2 : 1;
  fc.cx.d.assign(fc.basis.size(), IntMatrix{});
  for (size_t lev = 1; lev < fc.basis.size(); lev++) {
    if (fc.cx.dims[lev] == 0 || fc.cx.dims[lev - 1] == 0) continue;
    IntMatrix mat(fc.cx.dims[lev - 1], std::vector<Int>(fc.cx.dims[lev], 0));
    for (size_t j = 0; j < fc.basis[lev].size(); j++) {
      const Forest& f = fc.basis[lev][j];
      std::vector<int> maxes = o.maximal_nodes(f);
      for (size_t p = 1; p <= f.nodes.size(); p++) {
        int g = f.nodes[p - 1];
        if (std::find(maxes.begin(), maxes.end(), g) != maxes.end()) continue;
        Forest sub;
        sub.nodes = f.nodes;
        sub.nodes.erase(sub.nodes.begin() + (p - 1));
        auto it = fc.index_[lev - 1].find(sub);
        if (it == fc.index_[lev - 1].end())
          throw internal_error("forest boundary target missing");
        mat[it->second][j] += (p % 2 == 0 ? unit : -unit);
      }
    }
    fc.cx.d[lev] = std::move(mat);
  }
  fc.cx.validate();
  return fc;
}

std::vector<std::pair<PosetChain, Int>> sigma(const PosetView& v, const ForestOracle& o,
                                              const Forest& f) {
  std::map<PosetChain, Int> acc;
  long k = f.size();
  if (k == 0) {
    acc[PosetChain{}] = 1;
  } else {
    const BuildingSet& b = o.building();
    std::vector<std::vector<bool>> strict(k, std::vector<bool>(k, false));
    for (long i = 0; i < k; i++)
      for (long j = 0; j < k; j++)
        if (i != j) strict[i][j] = o.gen_contains(f.nodes[i], f.nodes[j]);

    std::vector<int> perm;
    std::vector<bool> placed(k, false);
    std::vector<int> chain_elems;
    std::function<void(const Subspace&)> extend = [&](const Subspace& partial) {
      if (static_cast<long>(perm.size()) == k) {
        int inv = 0;
        for (size_t a = 0; a < perm.size(); a++)
          for (size_t c = a + 1; c < perm.size(); c++)
            if (perm[a] > perm[c]) inv++;
        acc[PosetChain{chain_elems}] += (inv % 2 == 0 ? 1 : -1);
        return;
      }
      for (int c = 0; c < k; c++) {
        if (placed[c]) continue;
        bool ready = true;
        for (int j = 0; j < k; j++)
          if (strict[c][j] && !placed[j]) ready = false;
        if (!ready) continue;
        Subspace next = sum(partial, b.gens[f.nodes[c]]);
        if (next.dim() <= partial.dim())
          throw internal_error("forest partial sums must strictly increase");
        int idx = v.lattice().require(next);
        if (!v.in_poset(idx))
          throw internal_error("forest partial sum escapes the divisible poset");
        placed[c] = true;
        perm.push_back(c);
        chain_elems.push_back(idx);
        extend(next);
        chain_elems.pop_back();
        perm.pop_back();
        placed[c] = false;
      }
    };
    extend(Subspace::zero(b.ambient));
  }

  std::vector<std::pair<PosetChain, Int>> out;
  for (auto& [chain, coeff] : acc)
    if (coeff != 0) out.emplace_back(chain, coeff);
  return out;
}

IntMatrix sigma_matrix(const PosetView& v, const ForestOracle& o, const ForestComplex& fc,
                       const IntervalComplex& ic, long k) {
  long rows = ic.cx.dim_at(k), cols = fc.cx.dim_at(k);
  if (rows == 0 || cols == 0) return {};
  IntMatrix mat(rows, std::vector<Int>(cols, 0));
  for (long j = 0; j < cols; j++) {
    for (auto& [chain, coeff] : sigma(v, o, fc.basis_at(k)[j])) {
      int r = ic.chain_index(chain);
      if (r < 0) throw internal_error("sigma image chain missing from interval basis");
      mat[r][j] += coeff;
    }
  }
  return mat;
}

std::map<long, HomologyGroup> sigma_cone_homology(const PosetView& v, const ForestOracle& o,
                                                  int root) {
  ForestComplex fc = forest_complex(v, o, root, false);
  IntervalComplex ic = interval_complex(v, root);
  const ChainComplex& x = fc.cx;
  const ChainComplex& y = ic.cx;

  ChainComplex cone;
  cone.min_deg = std::min(x.min_deg + 1, y.min_deg);
  long top = std::max(x.max_deg() + 1, y.max_deg());
  auto cdim = [&](long k) { return x.dim_at(k - 1) + y.dim_at(k); };
  for (long k = cone.min_deg; k <= top; k++) {
    cone.dims.push_back(cdim(k));
    if (k == cone.min_deg || cdim(k) == 0 || cdim(k - 1) == 0) {
      cone.d.push_back({});
      continue;
    }
    IntMatrix mat(cdim(k - 1), std::vector<Int>(cdim(k), 0));
    long rx = x.dim_at(k - 2), cxx = x.dim_at(k - 1);
    const IntMatrix& dx = x.d_at(k - 1);
    for (long i = 0; i < rx && !dx.empty(); i++)
      for (long j = 0; j < cxx; j++) mat[i][j] = -dx[i][j];
    IntMatrix sig = sigma_matrix(v, o, fc, ic, k - 1);
    for (long i = 0; i < y.dim_at(k - 1) && !sig.empty(); i++)
      for (long j = 0; j < cxx; j++) mat[rx + i][j] = sig[i][j];
    const IntMatrix& dy = y.d_at(k);
    for (long i = 0; i < y.dim_at(k - 1) && !dy.empty(); i++)
      for (long j = 0; j < y.dim_at(k); j++) mat[rx + i][cxx + j] = dy[i][j];
    cone.d.push_back(std::move(mat));
  }
  return complex_homology(cone);
}

std::map<long, HomologyGroup> doubled_forest_cohomology(const PosetView& v,
                                                        const ForestOracle& o, int root) {
  ForestComplex fc = forest_complex(v, o, root, true);
  long dim_root = v.lattice().elems[root].dim();
  std::map<long, HomologyGroup> out;
  for (long k = fc.cx.min_deg; k <= fc.cx.max_deg(); k++) {
    IntMatrix up = int_transpose(fc.cx.d_at(k + 1));
    IntMatrix down = int_transpose(fc.cx.d_at(k));
    out[dim_root - k] = homology_at(up, down, fc.cx.dim_at(k));
  }
  return out;
}

}  // namespace dcp
