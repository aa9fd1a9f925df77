#include "dcp/posetcx.hpp"

#include <algorithm>
#include <functional>

namespace dcp {

PosetView::PosetView(const BuildingSet& b, const Lattice& l, int m) : b_(b), l_(l), m_(m) {
  if (m <= 0) throw input_error("divisibility parameter must be positive");
  size_t n = l.elems.size();
  member_.assign(n, false);
  // Lattice elements are sorted by dimension, so scanning in order sees
  // every candidate complement before the elements above it.
  for (size_t i = 0; i < n; i++) {
    const Subspace& a = l.elems[i];
    if (a.is_zero()) {
      member_[i] = true;
      continue;
    }
    for (const auto& g : b.gens) {
      if (g.dim() % m != 0) continue;
      if (!a.contains(g)) continue;
      int need = a.dim() - g.dim();
      bool found = false;
      for (size_t j = 0; j < i && !found; j++) {
        if (!member_[j]) continue;
        const Subspace& bsp = l.elems[j];
        if (bsp.dim() != need || !a.contains(bsp)) continue;
        if (sum(g, bsp) == a) found = true;
      }
      if (found) {
        member_[i] = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < n; i++)
    if (member_[i]) members_.push_back(static_cast<int>(i));
}

bool PosetView::leq(int a, int b) const {
  return l_.elems[b].contains(l_.elems[a]);
}

const std::vector<PosetChain>& IntervalComplex::basis_at(long k) const {
  static const std::vector<PosetChain> empty;
  long i = k - cx.min_deg;
  if (i < 0 || i >= static_cast<long>(basis.size())) return empty;
  return basis[i];
}

int IntervalComplex::chain_index(const PosetChain& c) const {
  long i = c.degree() - cx.min_deg;
  if (i < 0 || i >= static_cast<long>(index_.size())) return -1;
  auto it = index_[i].find(c);
  return it == index_[i].end() ? -1 : it->second;
}

IntervalComplex interval_complex(const PosetView& v, int top) {
  if (!v.in_poset(top))
    throw input_error("interval top is not in the divisible poset");
  IntervalComplex ic;
  ic.top = top;

  if (v.lattice().elems[top].is_zero()) {
    ic.cx.min_deg = 0;
    ic.cx.dims = {1};
    ic.cx.d = {{}};
    ic.basis = {{PosetChain{}}};
    ic.index_.resize(1);
    ic.index_[0][PosetChain{}] = 0;
    return ic;
  }

  // Poset members strictly between 0 and top, plus top itself.
  std::vector<int> below;
  for (int e : v.members()) {
    if (e == top) continue;
    if (!v.lattice().elems[e].is_zero() && v.leq(e, top)) below.push_back(e);
  }

  // Chains are built upward: every strictly increasing sequence through
  // `below` capped by top.
  std::vector<std::vector<PosetChain>> by_deg;
  std::vector<int> stack;
  auto emit = [&](const std::vector<int>& prefix) {
    PosetChain c;
    c.elems = prefix;
    c.elems.push_back(top);
    size_t deg = c.elems.size();
    if (by_deg.size() < deg) by_deg.resize(deg);
    by_deg[deg - 1].push_back(std::move(c));
  };
  std::function<void(int)> grow = [&](int last) {
    emit(stack);
    for (int e : below) {
      if (last >= 0 && (e == last || !v.leq(last, e))) continue;
      stack.push_back(e);
      grow(e);
      stack.pop_back();
    }
  };
  grow(-1);

  ic.cx.min_deg = 1;
  ic.cx.dims.resize(by_deg.size());
  ic.basis.resize(by_deg.size());
  ic.index_.resize(by_deg.size());
  for (size_t i = 0; i < by_deg.size(); i++) {
    std::sort(by_deg[i].begin(), by_deg[i].end());
    ic.basis[i] = std::move(by_deg[i]);
    ic.cx.dims[i] = static_cast<long>(ic.basis[i].size());
    for (size_t j = 0; j < ic.basis[i].size(); j++)
      ic.index_[i][ic.basis[i][j]] = static_cast<int>(j);
  }

  ic.cx.d.assign(ic.basis.size(), IntMatrix{});
  for (size_t i = 1; i < ic.basis.size(); i++) {
    if (ic.cx.dims[i] == 0 || ic.cx.dims[i - 1] == 0) continue;
    IntMatrix d(ic.cx.dims[i - 1], std::vector<Int>(ic.cx.dims[i], 0));
    for (size_t j = 0; j < ic.basis[i].size(); j++) {
      const PosetChain& c = ic.basis[i][j];
      // Interior positions are 1..size-1; the last stored element is the
      // top and is never deleted. Deleting position p carries (-1)^p.
      for (size_t p = 1; p + 1 <= c.elems.size(); p++) {
        PosetChain sub;
        sub.elems = c.elems;
        sub.elems.erase(sub.elems.begin() + (p - 1));
        int tgt = ic.index_[i - 1].at(sub);
        d[tgt][j] += (p % 2 == 0) ? 1 : -1;
      }
    }
    ic.cx.d[i] = std::move(d);
  }
  ic.cx.validate();
  return ic;
}

std::vector<std::pair<int, std::map<long, HomologyGroup>>> whitney_homology(const PosetView& v) {
  std::vector<std::pair<int, std::map<long, HomologyGroup>>> out;
  for (int e : v.members()) {
    IntervalComplex ic = interval_complex(v, e);
    out.emplace_back(e, ic.cx.homology_all());
  }
  return out;
}

std::map<long, HomologyGroup> interval_cohomology(const PosetView& v, int top) {
  IntervalComplex ic = interval_complex(v, top);
  std::map<long, HomologyGroup> out;
  for (long k = ic.cx.min_deg; k <= ic.cx.max_deg(); k++) {
    IntMatrix outgoing = int_transpose(ic.cx.d_at(k + 1));
    IntMatrix incoming = int_transpose(ic.cx.d_at(k));
    out[k] = homology_at(outgoing, incoming, ic.cx.dim_at(k));
  }
  return out;
}

std::map<long, HomologyGroup> gm_complement_homology(const BuildingSet& b, const Lattice& l) {
  PosetView v(b, l, 1);
  if (v.members().size() != l.elems.size())
    throw internal_error("1-divisible poset should be the whole lattice");
  std::map<long, HomologyGroup> total;
  for (int e : v.members()) {
    long d = l.elems[e].dim();
    for (const auto& [j, g] : interval_cohomology(v, e)) add_group(total, d - j, g);
  }
  return total;
}

}  // namespace dcp
