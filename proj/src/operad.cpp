#include "dcp/operad.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace dcp {

namespace {

std::string chain_key(const SpaceChain& c) {
  std::string out;
  for (const Subspace& s : c) {
    out += s.key();
    out += ';';
  }
  return out;
}

std::string tensor_key(const SpaceChain& l, const SpaceChain& r) {
  return chain_key(l) + "|" + chain_key(r);
}

}  // namespace

SpaceChain to_spaces(const Lattice& l, const PosetChain& c) {
  SpaceChain out;
  for (int e : c.elems) out.push_back(l.elems[e]);
  return out;
}

std::vector<std::pair<SpaceChain, Int>> space_chain_boundary(const SpaceChain& c) {
  std::vector<std::pair<SpaceChain, Int>> out;
  for (size_t p = 1; p + 1 <= c.size(); p++) {
    SpaceChain face = c;
    face.erase(face.begin() + (p - 1));
    out.emplace_back(std::move(face), p % 2 == 0 ? 1 : -1);
  }
  return out;
}

WhitneyCtx::WhitneyCtx(BuildingSet b, int m, int max_lattice)
    : b_(std::move(b)), l_(generate_lattice(b_, max_lattice)), v_(b_, l_, m) {}

std::unique_ptr<WhitneyCtx> restrict_ctx(const WhitneyCtx& c, const Subspace& x) {
  return std::make_unique<WhitneyCtx>(restrict_to(c.building(), x), c.m());
}

OperadMap make_operad_map(const WhitneyCtx& src, const WhitneyCtx& dst, DualMap fstar) {
  if (fstar.dom != dst.building().ambient || fstar.cod != src.building().ambient)
    throw input_error("operad map has mismatched ambient dimensions");
  if (src.m() != dst.m()) throw input_error("operad map requires equal divisibility");
  OperadMap f;
  f.src = &src;
  f.dst = &dst;
  f.cls = classify_map(src.building(), dst.building(), dst.lattice(), fstar);
  if (f.cls == MapClass::invalid)
    throw input_error("map is not a weak morphism of arrangements");
  f.kernel = kernel_dual(fstar);
  f.fstar = std::move(fstar);
  return f;
}

std::optional<TensorTerm> pullback_chain(const OperadMap& f, const WhitneyCtx& ker_ctx,
                                         const SpaceChain& c) {
  const WhitneyCtx& dst = *f.dst;
  const WhitneyCtx& src = *f.src;
  if (ker_ctx.building().ambient != dst.building().ambient)
    throw input_error("kernel context has wrong ambient dimension");

  for (size_t i = 0; i < c.size(); i++) {
    int idx = dst.lattice().find(c[i]);
    if (idx < 0 || !dst.view().in_poset(idx))
      throw input_error("chain element outside the divisible poset");
    if (i > 0 && !(c[i].contains(c[i - 1]) && c[i].dim() > c[i - 1].dim()))
      throw input_error("chain elements must strictly increase");
  }

  size_t l = 0;
  if (!c.empty()) {
    Subspace k = intersect(c.back(), f.kernel);
    if (!k.is_zero()) {
      bool found = false;
      for (size_t i = 0; i < c.size(); i++)
        if (c[i] == k) {
          l = i + 1;
          found = true;
          break;
        }
      if (!found) return std::nullopt;
    }
  }

  TensorTerm t;
  t.left.assign(c.begin(), c.begin() + l);
  for (const Subspace& s : t.left) {
    int idx = ker_ctx.lattice().require(s);
    if (!ker_ctx.view().in_poset(idx))
      throw internal_error("kernel-side chain element escapes the divisible poset");
  }

  for (size_t i = l; i < c.size(); i++) {
    Subspace img = pullback(f.fstar, c[i]);
    if (!t.right.empty() && img.dim() <= t.right.back().dim())
      throw internal_error("pullback chain images must strictly increase");
    int idx = src.lattice().require(img);
    if (!src.view().in_poset(idx)) return std::nullopt;
    t.right.push_back(std::move(img));
  }
  return t;
}

BuildingSet arrangement_sum(const BuildingSet& a, const BuildingSet& b) {
  std::vector<Subspace> gens;
  for (const Subspace& g : a.gens) gens.push_back(embed_left(g, b.ambient));
  for (const Subspace& g : b.gens) gens.push_back(embed_right(a.ambient, g));
  return BuildingSet::make(a.ambient + b.ambient, std::move(gens));
}

Subspace embed_left(const Subspace& s, int extra) {
  Mat rows;
  for (const Vec& r : s.rows()) {
    Vec v = r;
    v.resize(r.size() + extra, 0);
    rows.push_back(std::move(v));
  }
  return Subspace::span(s.ambient() + extra, std::move(rows));
}

Subspace embed_right(int extra, const Subspace& s) {
  Mat rows;
  for (const Vec& r : s.rows()) {
    Vec v(extra, 0);
    v.insert(v.end(), r.begin(), r.end());
    rows.push_back(std::move(v));
  }
  return Subspace::span(extra + s.ambient(), std::move(rows));
}

std::vector<std::pair<SpaceChain, Int>> shuffle_product(const SpaceChain& a, int amb_a,
                                                        const SpaceChain& b, int amb_b) {
  size_t p = a.size(), q = b.size();
  std::vector<std::vector<Subspace>> grid(p + 1, std::vector<Subspace>(q + 1));
  for (size_t i = 0; i <= p; i++)
    for (size_t j = 0; j <= q; j++) {
      Subspace left = i == 0 ? Subspace::zero(amb_a + amb_b) : embed_left(a[i - 1], amb_b);
      Subspace right = j == 0 ? Subspace::zero(amb_a + amb_b) : embed_right(amb_a, b[j - 1]);
      grid[i][j] = sum(left, right);
    }

  std::vector<std::pair<SpaceChain, Int>> out;
  std::vector<int> mask(p + q, 0);
  std::fill(mask.begin(), mask.begin() + q, 0);
  std::fill(mask.begin() + q, mask.end(), 1);
  std::sort(mask.begin(), mask.end());
  do {
    SpaceChain chain;
    size_t i = 0, j = 0;
    long inv = 0;
    for (size_t s = 0; s < mask.size(); s++) {
      if (mask[s]) {
        i++;
        for (size_t t2 = 0; t2 < s; t2++)
          if (!mask[t2]) inv++;
      } else {
        j++;
      }
      chain.push_back(grid[i][j]);
    }
    out.emplace_back(std::move(chain), inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<std::pair<SpaceChain, Int>> pullback_shuffled(const OperadMap& f,
                                                          const WhitneyCtx& ker_ctx,
                                                          const SpaceChain& c) {
  auto t = pullback_chain(f, ker_ctx, c);
  if (!t) return {};
  return shuffle_product(t->left, f.dst->building().ambient, t->right,
                         f.src->building().ambient);
}

bool pullback_commutes(const OperadMap& f, const WhitneyCtx& ker_ctx, std::string* why) {
  for (int a : f.dst->view().members()) {
    IntervalComplex ic = interval_complex(f.dst->view(), a);
    for (long k = ic.cx.min_deg; k <= ic.cx.max_deg(); k++) {
      for (const PosetChain& pc : ic.basis_at(k)) {
        SpaceChain c = to_spaces(f.dst->lattice(), pc);
        std::map<std::string, Int> acc;
        for (auto& [face, s] : space_chain_boundary(c)) {
          auto t = pullback_chain(f, ker_ctx, face);
          if (t) acc[tensor_key(t->left, t->right)] += s;
        }
        auto t0 = pullback_chain(f, ker_ctx, c);
        if (t0) {
          Int flip = t0->left.size() % 2 == 0 ? 1 : -1;
          for (auto& [face, s] : space_chain_boundary(t0->left))
            acc[tensor_key(face, t0->right)] -= s;
          for (auto& [face, s] : space_chain_boundary(t0->right))
            acc[tensor_key(t0->left, face)] -= s * flip;
        }
        for (auto& [key, v] : acc)
          if (v != 0) {
            if (why) *why = "boundary mismatch on chain " + chain_key(c);
            return false;
          }
      }
    }
  }
  return true;
}

bool shuffle_commutes(const WhitneyCtx& a, const WhitneyCtx& b, std::string* why) {
  if (a.m() != b.m()) throw input_error("shuffle requires equal divisibility");
  WhitneyCtx sum_ctx(arrangement_sum(a.building(), b.building()), a.m());
  int amb_a = a.building().ambient, amb_b = b.building().ambient;

  for (int ga : a.view().members()) {
    IntervalComplex ia = interval_complex(a.view(), ga);
    for (int gb : b.view().members()) {
      IntervalComplex ib = interval_complex(b.view(), gb);
      for (long ka = ia.cx.min_deg; ka <= ia.cx.max_deg(); ka++)
        for (const PosetChain& pa : ia.basis_at(ka))
          for (long kb = ib.cx.min_deg; kb <= ib.cx.max_deg(); kb++)
            for (const PosetChain& pb : ib.basis_at(kb)) {
              SpaceChain x = to_spaces(a.lattice(), pa);
              SpaceChain y = to_spaces(b.lattice(), pb);
              std::map<std::string, Int> acc;
              for (auto& [sc, s] : shuffle_product(x, amb_a, y, amb_b)) {
                for (const Subspace& e : sc) {
                  int idx = sum_ctx.lattice().require(e);
                  if (!sum_ctx.view().in_poset(idx))
                    throw internal_error("shuffled chain escapes the divisible poset");
                }
                for (auto& [face, s2] : space_chain_boundary(sc)) acc[chain_key(face)] += s * s2;
              }
              for (auto& [xf, s] : space_chain_boundary(x))
                for (auto& [sc, s2] : shuffle_product(xf, amb_a, y, amb_b))
                  acc[chain_key(sc)] -= s * s2;
              Int flip = x.size() % 2 == 0 ? 1 : -1;
              for (auto& [yf, s] : space_chain_boundary(y))
                for (auto& [sc, s2] : shuffle_product(x, amb_a, yf, amb_b))
                  acc[chain_key(sc)] -= s * s2 * flip;
              for (auto& [key, v] : acc)
                if (v != 0) {
                  if (why)
                    *why = "shuffle boundary mismatch on " + chain_key(x) + " x " + chain_key(y);
                  return false;
                }
            }
    }
  }
  return true;
}

bool composition_law_ok(const WhitneyCtx& a, const WhitneyCtx& b, const WhitneyCtx& c,
                        const DualMap& fstar, const DualMap& gstar, std::string* why,
                        long* checked) {
  DualMap gfstar = compose(gstar, fstar);
  auto ctx_b_kf = restrict_ctx(b, kernel_dual(fstar));
  auto ctx_c_kg = restrict_ctx(c, kernel_dual(gstar));
  auto ctx_c_kgf = restrict_ctx(c, kernel_dual(gfstar));

  OperadMap f = make_operad_map(a, b, fstar);
  OperadMap g = make_operad_map(b, c, gstar);
  OperadMap gf = make_operad_map(a, c, gfstar);
  OperadMap h = make_operad_map(*ctx_b_kf, *ctx_c_kgf, gstar);

  long count = 0;
  for (int top : c.view().members()) {
    IntervalComplex ic = interval_complex(c.view(), top);
    for (long k = ic.cx.min_deg; k <= ic.cx.max_deg(); k++) {
      for (const PosetChain& pc : ic.basis_at(k)) {
        SpaceChain sc = to_spaces(c.lattice(), pc);
        count++;

        std::optional<std::array<SpaceChain, 3>> lhs, rhs;
        if (auto outer = pullback_chain(gf, *ctx_c_kgf, sc)) {
          if (auto inner = pullback_chain(h, *ctx_c_kg, outer->left))
            lhs = {inner->left, inner->right, outer->right};
        }
        if (auto outer = pullback_chain(g, *ctx_c_kg, sc)) {
          if (auto inner = pullback_chain(f, *ctx_b_kf, outer->right))
            rhs = {outer->left, inner->left, inner->right};
        }
        bool equal = lhs.has_value() == rhs.has_value() &&
                     (!lhs || (chain_key((*lhs)[0]) == chain_key((*rhs)[0]) &&
                               chain_key((*lhs)[1]) == chain_key((*rhs)[1]) &&
                               chain_key((*lhs)[2]) == chain_key((*rhs)[2])));
        if (!equal) {
          if (why) *why = "composition law fails on chain " + chain_key(sc);
          return false;
        }
      }
    }
  }
  if (checked) *checked = count;
  return true;
}

}  // namespace dcp
