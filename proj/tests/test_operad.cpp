#include "dcp/operad.hpp"

#include <cstdio>

#include "support.hpp"

namespace {

dcp::Subspace part_space(int n, const std::vector<std::vector<int>>& blocks) {
  dcp::Mat rows;
  for (const auto& blk : blocks)
    for (size_t i = 1; i < blk.size(); i++) {
      dcp::Vec v(n, 0);
      v[blk[0]] = 1;
      v[blk[i]] = -1;
      rows.push_back(v);
    }
  return dcp::Subspace::span(n, rows);
}

dcp::BuildingSet braid(int n) {
  std::vector<dcp::Subspace> lines;
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) lines.push_back(part_space(n, {{i, j}}));
  return dcp::closure(n, lines);
}

dcp::BuildingSet axes(int n) {
  std::vector<dcp::Subspace> lines;
  for (int i = 0; i < n; i++) {
    dcp::Vec v(n, 0);
    v[i] = 1;
    lines.push_back(dcp::Subspace::span(n, {v}));
  }
  return dcp::closure(n, lines);
}

dcp::DualMap identity_map(int n) {
  dcp::DualMap f;
  f.dom = n;
  f.cod = n;
  f.mat.assign(n, dcp::Vec(n, 0));
  for (int i = 0; i < n; i++) f.mat[i][i] = 1;
  return f;
}

// Doubling the last point: rows e_0 .. e_{n-1}, e_{n-1} as a map into n+1
// points.
dcp::DualMap doubling_map(int n) {
  dcp::DualMap f;
  f.dom = n + 1;
  f.cod = n;
  f.mat.assign(n + 1, dcp::Vec(n, 0));
  for (int i = 0; i < n; i++) f.mat[i][i] = 1;
  f.mat[n][n - 1] = 1;
  return f;
}

void test_pullback_values() {
  dcp::WhitneyCtx b3(braid(3), 1);
  dcp::Subspace g01 = part_space(3, {{0, 1}});
  dcp::Subspace g02 = part_space(3, {{0, 2}});
  dcp::Subspace top = part_space(3, {{0, 1, 2}});

  dcp::QuotientResult qr = dcp::quotient(b3.building(), g01);
  REQUIRE(qr.building.gens.size() == 1, "braid(3) mod a pair has one generator");
  dcp::WhitneyCtx src(qr.building, 1);
  dcp::OperadMap f = dcp::make_operad_map(src, b3, qr.q);
  REQUIRE(f.cls == dcp::MapClass::purely_operadic, "quotient map is purely operadic");
  REQUIRE(f.kernel == g01, "quotient map kernel");
  auto ker_ctx = dcp::restrict_ctx(b3, f.kernel);
  REQUIRE(ker_ctx->building().gens.size() == 1, "kernel arrangement is the pair");

  auto t1 = dcp::pullback_chain(f, *ker_ctx, {g01});
  REQUIRE(t1 && t1->left == dcp::SpaceChain{g01} && t1->right.empty(),
          "kernel grade splits fully left");

  auto t2 = dcp::pullback_chain(f, *ker_ctx, {g02});
  REQUIRE(t2 && t2->left.empty() && t2->right.size() == 1, "transverse grade splits right");
  REQUIRE(t2->right[0] == dcp::pullback(f.fstar, g02), "right chain is the image");

  REQUIRE(!dcp::pullback_chain(f, *ker_ctx, {top}), "missing kernel meet vanishes");
  REQUIRE(!dcp::pullback_chain(f, *ker_ctx, {g02, top}), "missing kernel meet vanishes");

  auto t4 = dcp::pullback_chain(f, *ker_ctx, {g01, top});
  REQUIRE(t4.has_value(), "split chain survives");
  REQUIRE(t4->left == dcp::SpaceChain{g01}, "split chain left part");
  REQUIRE(t4->right == dcp::SpaceChain{dcp::pullback(f.fstar, top)}, "split chain right part");

  auto t0 = dcp::pullback_chain(f, *ker_ctx, {});
  REQUIRE(t0 && t0->left.empty() && t0->right.empty(), "empty chain maps to empty tensor");

  // Identity morphism: kernel zero, everything lands on the right.
  dcp::WhitneyCtx b3b(braid(3), 1);
  dcp::OperadMap id = dcp::make_operad_map(b3b, b3, identity_map(3));
  REQUIRE(id.cls == dcp::MapClass::morphism, "identity is a morphism");
  auto id_ker = dcp::restrict_ctx(b3, id.kernel);
  auto t5 = dcp::pullback_chain(id, *id_ker, {g01, top});
  REQUIRE(t5 && t5->left.empty() && t5->right == (dcp::SpaceChain{g01, top}),
          "identity pullback keeps the chain");

  // Malformed chains are rejected.
  REQUIRE_THROWS(dcp::pullback_chain(f, *ker_ctx, {g01, g02}), dcp::input_error,
                 "non-increasing chain rejected");

  // A map sending a generator outside the source generators is invalid.
  dcp::WhitneyCtx ax3(axes(3), 1);
  REQUIRE_THROWS(dcp::make_operad_map(ax3, b3, identity_map(3)), dcp::input_error,
                 "non-weak map rejected");
  PASS("pullback values");
}

void test_pullback_weak() {
  // Doubling the last point of braid(3) inside braid(4).
  dcp::WhitneyCtx b4(braid(4), 1);
  dcp::WhitneyCtx b3(braid(3), 1);
  dcp::OperadMap f = dcp::make_operad_map(b3, b4, doubling_map(3));
  dcp::Subspace g23 = part_space(4, {{2, 3}});
  REQUIRE(f.kernel == g23, "doubling map kernel is the merged pair");
  auto ker_ctx = dcp::restrict_ctx(b4, f.kernel);

  dcp::Subspace g023 = part_space(4, {{0, 2, 3}});
  dcp::Subspace full4 = part_space(4, {{0, 1, 2, 3}});
  auto t = dcp::pullback_chain(f, *ker_ctx, {g23, g023, full4});
  REQUIRE(t.has_value(), "kernel in the middle of the chain");
  REQUIRE(t->left == dcp::SpaceChain{g23}, "weak pullback left");
  REQUIRE(t->right == (dcp::SpaceChain{part_space(3, {{0, 2}}), part_space(3, {{0, 1, 2}})}),
          "weak pullback right images");

  REQUIRE(!dcp::pullback_chain(f, *ker_ctx, {part_space(4, {{0, 1}}), full4}),
          "kernel meet absent from the chain");
  PASS("weak morphism pullback");
}

void test_chain_maps() {
  dcp::WhitneyCtx b3(braid(3), 1);
  dcp::Subspace g01 = part_space(3, {{0, 1}});
  dcp::QuotientResult qr = dcp::quotient(b3.building(), g01);
  dcp::WhitneyCtx src(qr.building, 1);
  dcp::OperadMap f = dcp::make_operad_map(src, b3, qr.q);
  auto ker_f = dcp::restrict_ctx(b3, f.kernel);
  std::string why;
  REQUIRE(dcp::pullback_commutes(f, *ker_f, &why), why.c_str());

  dcp::WhitneyCtx b4(braid(4), 1);
  dcp::QuotientResult qr4 = dcp::quotient(b4.building(), part_space(4, {{0, 1, 2}}));
  dcp::WhitneyCtx src4(qr4.building, 1);
  dcp::OperadMap f4 = dcp::make_operad_map(src4, b4, qr4.q);
  auto ker_f4 = dcp::restrict_ctx(b4, f4.kernel);
  REQUIRE(dcp::pullback_commutes(f4, *ker_f4, &why), why.c_str());

  dcp::WhitneyCtx b3w(braid(3), 1);
  dcp::OperadMap dbl = dcp::make_operad_map(b3w, b4, doubling_map(3));
  auto ker_dbl = dcp::restrict_ctx(b4, dbl.kernel);
  REQUIRE(dcp::pullback_commutes(dbl, *ker_dbl, &why), why.c_str());

  // Two-divisible posets.
  dcp::WhitneyCtx b4m2(braid(4), 2);
  dcp::QuotientResult qp = dcp::quotient(b4m2.building(), part_space(4, {{0, 1}}));
  dcp::WhitneyCtx srcp(qp.building, 2);
  dcp::OperadMap fp = dcp::make_operad_map(srcp, b4m2, qp.q);
  auto ker_fp = dcp::restrict_ctx(b4m2, fp.kernel);
  REQUIRE(dcp::pullback_commutes(fp, *ker_fp, &why), why.c_str());

  dcp::WhitneyCtx b5m2(braid(5), 2);
  dcp::QuotientResult q5 = dcp::quotient(b5m2.building(), part_space(5, {{0, 1, 2}}));
  dcp::WhitneyCtx src5(q5.building, 2);
  dcp::OperadMap f5 = dcp::make_operad_map(src5, b5m2, q5.q);
  auto ker_f5 = dcp::restrict_ctx(b5m2, f5.kernel);
  REQUIRE(dcp::pullback_commutes(f5, *ker_f5, &why), why.c_str());
  PASS("pullback chain maps");
}

void test_shuffle() {
  // Degree one by degree one: two interleavings with opposite signs.
  dcp::Vec e0 = {1};
  dcp::Subspace x = dcp::Subspace::span(1, {e0});
  auto terms = dcp::shuffle_product({x}, 1, {x}, 1);
  REQUIRE(terms.size() == 2, "two shuffles of a pair of steps");
  dcp::Subspace left_line = dcp::Subspace::span(2, {{1, 0}});
  dcp::Subspace right_line = dcp::Subspace::span(2, {{0, 1}});
  dcp::Subspace full2 = dcp::Subspace::full(2);
  for (auto& [chain, s] : terms) {
    REQUIRE(chain.size() == 2 && chain[1] == full2, "shuffled chain tops agree");
    if (chain[0] == left_line) REQUIRE(s == 1, "left-first shuffle is positive");
    if (chain[0] == right_line) REQUIRE(s == -1, "right-first shuffle is negative");
  }

  std::string why;
  dcp::WhitneyCtx b3(braid(3), 1);
  dcp::WhitneyCtx b3b(braid(3), 1);
  REQUIRE(dcp::shuffle_commutes(b3, b3b, &why), why.c_str());

  dcp::WhitneyCtx b4(braid(4), 1);
  dcp::WhitneyCtx ax2(axes(2), 1);
  REQUIRE(dcp::shuffle_commutes(b4, ax2, &why), why.c_str());

  dcp::BuildingSet sum = dcp::arrangement_sum(braid(3), braid(3));
  REQUIRE(sum.ambient == 6 && sum.gens.size() == 8, "sum arrangement generators");
  REQUIRE(dcp::generate_lattice(sum).size() == 25, "sum lattice is the product");

  // Pullback with shuffle lands in the sum with both interleavings.
  dcp::Subspace g01 = part_space(3, {{0, 1}});
  dcp::QuotientResult qr = dcp::quotient(b3.building(), g01);
  dcp::WhitneyCtx src(qr.building, 1);
  dcp::OperadMap f = dcp::make_operad_map(src, b3, qr.q);
  auto ker_f = dcp::restrict_ctx(b3, f.kernel);
  auto shuffled = dcp::pullback_shuffled(f, *ker_f, {g01, part_space(3, {{0, 1, 2}})});
  REQUIRE(shuffled.size() == 2, "split chain shuffles into two terms");
  PASS("shuffle products");
}

void test_composition_law() {
  std::string why;
  long checked = 0;

  // Quotient of a quotient of braid(4).
  dcp::WhitneyCtx c4(braid(4), 1);
  dcp::QuotientResult g_q = dcp::quotient(c4.building(), part_space(4, {{0, 1}}));
  dcp::WhitneyCtx b_ctx(g_q.building, 1);
  dcp::QuotientResult f_q = dcp::quotient(b_ctx.building(), b_ctx.building().gens[0]);
  dcp::WhitneyCtx a_ctx(f_q.building, 1);
  REQUIRE(dcp::composition_law_ok(a_ctx, b_ctx, c4, f_q.q, g_q.q, &why, &checked),
          why.c_str());
  REQUIRE(checked >= 50, "enough chains exercised");

  // Point doubling after a quotient of braid(3).
  dcp::WhitneyCtx b3(braid(3), 1);
  dcp::QuotientResult f3 = dcp::quotient(b3.building(), part_space(3, {{0, 1}}));
  dcp::WhitneyCtx a3(f3.building, 1);
  REQUIRE(dcp::composition_law_ok(a3, b3, c4, f3.q, doubling_map(3), &why), why.c_str());
  PASS("composition law");
}

}  // namespace

int main() {
  test_pullback_values();
  test_pullback_weak();
  test_chain_maps();
  test_shuffle();
  test_composition_law();
  if (g_failures == 0) PASS("operad suite complete");
  return g_failures == 0 ? 0 : 1;
}
