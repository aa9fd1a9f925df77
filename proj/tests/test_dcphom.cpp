#include "dcp/dcphom.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

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

dcp::Subspace block_space(int n, int lo, int hi) {
  dcp::Mat rows;
  for (int i = lo; i <= hi; i++) {
    dcp::Vec v(n, 0);
    v[i] = 1;
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

// Single full generator: the model is projective space of dimension n - 1.
dcp::BuildingSet single(int n) { return dcp::closure(n, {dcp::Subspace::full(n)}); }

// A plane inside the full space.
dcp::BuildingSet plane_and_full() {
  return dcp::closure(4, {block_space(4, 1, 2), dcp::Subspace::full(4)});
}

// Two independent blocks; the model is a product of projective spaces.
dcp::BuildingSet two_blocks(int d1, int d2) {
  int n = d1 + d2;
  return dcp::closure(n, {block_space(n, 0, d1 - 1), block_space(n, d1, n - 1)});
}

bool same_groups(const std::map<long, dcp::HomologyGroup>& a,
                 const std::map<long, dcp::HomologyGroup>& b) {
  std::set<long> degs;
  for (auto& [k, g] : a) degs.insert(k);
  for (auto& [k, g] : b) degs.insert(k);
  for (long k : degs) {
    dcp::HomologyGroup ga = a.count(k) ? a.at(k) : dcp::HomologyGroup{};
    dcp::HomologyGroup gb = b.count(k) ? b.at(k) : dcp::HomologyGroup{};
    if (!(ga == gb)) return false;
  }
  return true;
}

bool dims_eq(const std::vector<long>& a, const std::vector<long>& b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; i++) {
    long x = i < a.size() ? a[i] : 0;
    long y = i < b.size() ? b[i] : 0;
    if (x != y) return false;
  }
  return true;
}

const dcp::TableRow* find_row(const std::vector<dcp::TableRow>& rows,
                              const dcp::Subspace& s) {
  for (const auto& r : rows)
    if (r.space == s) return &r;
  return nullptr;
}

const dcp::DimsRow* find_dims(const std::vector<dcp::DimsRow>& rows,
                              const dcp::Subspace& s) {
  for (const auto& r : rows)
    if (r.space == s) return &r;
  return nullptr;
}

dcp::HomologyGroup grp(long rank, std::vector<long> torsion) {
  dcp::HomologyGroup g;
  g.rank = rank;
  for (long t : torsion) g.torsion.push_back(dcp::Int(t));
  return g;
}

void test_tables() {
  dcp::HomologyGroup h = dcp::halve_even_torsion(grp(0, {2, 4, 8}));
  REQUIRE(h == grp(0, {2, 4}), "halving drops bare factors of two");
  REQUIRE(dcp::halve_even_torsion(grp(1, {6})) == grp(1, {3}),
          "halving keeps odd parts");

  dcp::BuildingSet gv = plane_and_full();
  dcp::Lattice lgv = dcp::generate_lattice(gv, dcp::kDefaultMaxLattice);
  dcp::ForestOracle ogv(gv);
  dcp::PosetView vgv(gv, lgv, 2);
  dcp::HomologyTable t = dcp::doubled_table(vgv, ogv);
  REQUIRE(t.rows.size() == 3, "plane arrangement divisible poset size");
  const dcp::TableRow* rz = find_row(t.rows, dcp::Subspace::zero(4));
  const dcp::TableRow* rg = find_row(t.rows, block_space(4, 1, 2));
  const dcp::TableRow* rf = find_row(t.rows, dcp::Subspace::full(4));
  REQUIRE(rz && rg && rf, "table rows cover the divisible poset");
  REQUIRE(rz->groups.at(0) == grp(1, {}), "zero grade carries the unit");
  REQUIRE(rg->groups.at(1) == grp(1, {}), "plane grade free in degree one");
  REQUIRE(rf->groups.at(2) == grp(0, {2}), "full grade doubled torsion");
  REQUIRE(rf->groups.at(3).trivial(), "full grade trivial in degree three");
  REQUIRE(same_groups(t.total, {{0, grp(1, {})}, {1, grp(1, {})}, {2, grp(0, {2})}}),
          "plane arrangement table totals");
  dcp::HomologyTable red = dcp::halve_even_torsion(t);
  REQUIRE(same_groups(red.total, {{0, grp(1, {})}, {1, grp(1, {})}}),
          "plane arrangement reduced totals");

  dcp::ModelHomology b4 = dcp::model_homology(braid(4));
  REQUIRE(same_groups(b4.table.total, {{0, grp(1, {})}, {1, grp(4, {})}}),
          "braid(4) table totals");

  dcp::ModelHomology b5 = dcp::model_homology(braid(5));
  REQUIRE(same_groups(b5.table.total,
                      {{0, grp(1, {})}, {1, grp(10, {})}, {2, grp(9, {2})}}),
          "braid(5) table totals");
  REQUIRE(same_groups(b5.reduced.total,
                      {{0, grp(1, {})}, {1, grp(10, {})}, {2, grp(9, {})}}),
          "braid(5) reduced totals are torsion free");
  PASS("homology tables");
}

void test_mod2() {
  dcp::BuildingSet s4 = single(4);
  dcp::Lattice ls4 = dcp::generate_lattice(s4, dcp::kDefaultMaxLattice);
  dcp::ForestOracle os4(s4);
  dcp::Mod2Table m = dcp::mod2_table(ls4, os4);
  REQUIRE(dims_eq(m.total, {1, 1, 1, 1}), "projective three-space mod-2 dims");

  dcp::ModelHomology b3 = dcp::model_homology(braid(3));
  REQUIRE(dims_eq(b3.mod2.total, {1, 1}), "braid(3) mod-2 dims");

  dcp::ModelHomology b4 = dcp::model_homology(braid(4));
  REQUIRE(dims_eq(b4.mod2.total, {1, 5, 1}), "braid(4) mod-2 dims");
  const dcp::DimsRow* top4 = find_dims(b4.mod2.rows, part_space(4, {{0, 1, 2, 3}}));
  REQUIRE(top4 && dims_eq(top4->dims, {0, 1, 1}), "braid(4) root grade mod-2 dims");

  dcp::ModelHomology b5 = dcp::model_homology(braid(5));
  REQUIRE(dims_eq(b5.mod2.total, {1, 16, 16, 1}), "braid(5) mod-2 dims");

  dcp::ModelHomology gv = dcp::model_homology(plane_and_full());
  REQUIRE(dims_eq(gv.mod2.total, {1, 2, 2, 1}), "plane arrangement mod-2 dims");

  dcp::ModelHomology tor = dcp::model_homology(two_blocks(2, 2));
  REQUIRE(dims_eq(tor.mod2.total, {1, 2, 1}), "torus mod-2 dims");

  dcp::ModelHomology ax = dcp::model_homology(axes(3));
  REQUIRE(dims_eq(ax.mod2.total, {1}), "coordinate model is a point");
  PASS("mod-2 dimensions");
}

void test_bockstein_values() {
  dcp::BuildingSet gv = plane_and_full();
  dcp::ForestOracle o(gv);
  dcp::Subspace full = dcp::Subspace::full(4);
  int ig = gv.gen_index(block_space(4, 1, 2));
  int iv = gv.gen_index(full);
  REQUIRE(ig >= 0 && iv >= 0, "generator indices resolve");

  dcp::WeightedForest w1{dcp::Forest{{iv}}, {1}};
  dcp::WeightedForest w2{dcp::Forest{{iv}}, {2}};
  dcp::WeightedForest w3{dcp::Forest{{iv}}, {3}};
  dcp::WeightedForest c2{dcp::Forest{{ig, iv}}, {1, 1}};

  REQUIRE(dcp::bockstein_add(o, full, w1).empty() && dcp::bockstein_drop(w1).empty(),
          "lowest weight is a cycle");
  auto a2 = dcp::bockstein_add(o, full, w2);
  auto d2 = dcp::bockstein_drop(w2);
  REQUIRE(a2.empty(), "parent weight two vanishes under grafting");
  REQUIRE(d2.size() == 1 && d2[0] == w1, "even weight lowers by one");
  auto a3 = dcp::bockstein_add(o, full, w3);
  auto d3 = dcp::bockstein_drop(w3);
  REQUIRE(a3.size() == 1 && a3[0] == c2, "grafting the plane under the full space");
  REQUIRE(d3.empty(), "odd weight does not lower");
  REQUIRE(dcp::bockstein_add(o, full, c2).empty() && dcp::bockstein_drop(c2).empty(),
          "two-node class is a cycle");

  auto ag = dcp::bockstein_add(o, block_space(4, 1, 2),
                               dcp::WeightedForest{dcp::Forest{{ig}}, {1}});
  REQUIRE(ag.empty(), "grafting respects the grade root");
  PASS("bockstein values");
}

void test_bockstein_identities() {
  std::vector<dcp::BuildingSet> corpus;
  corpus.push_back(braid(4));
  corpus.push_back(plane_and_full());
  for (const dcp::BuildingSet& b : corpus) {
    dcp::Lattice l = dcp::generate_lattice(b, dcp::kDefaultMaxLattice);
    dcp::ForestOracle o(b);
    for (const dcp::Subspace& root : l.elems) {
      auto basis = dcp::weighted_forests(o, root);
      for (const auto& level : basis)
        for (const dcp::WeightedForest& w : level) {
          std::map<dcp::WeightedForest, int> dd, aa, mixed;
          for (const auto& t : dcp::bockstein_drop(w))
            for (const auto& u : dcp::bockstein_drop(t)) dd[u]++;
          for (const auto& t : dcp::bockstein_add(o, root, w))
            for (const auto& u : dcp::bockstein_add(o, root, t)) aa[u]++;
          for (const auto& t : dcp::bockstein_add(o, root, w))
            for (const auto& u : dcp::bockstein_drop(t)) mixed[u]++;
          for (const auto& t : dcp::bockstein_drop(w))
            for (const auto& u : dcp::bockstein_add(o, root, t)) mixed[u]++;
          for (const auto& [term, c] : dd)
            REQUIRE(c % 2 == 0, "lowering part squares to zero");
          for (const auto& [term, c] : aa)
            REQUIRE(c % 2 == 0, "grafting part squares to zero");
          for (const auto& [term, c] : mixed)
            REQUIRE(c % 2 == 0, "bockstein parts anticommute");
        }
    }
  }
  PASS("bockstein identities");
}

void test_bockstein_tables() {
  dcp::ModelHomology s3 = dcp::model_homology(single(3));
  REQUIRE(dims_eq(s3.bockstein.total, {1}), "projective plane bockstein dims");

  dcp::ModelHomology s4 = dcp::model_homology(single(4));
  REQUIRE(dims_eq(s4.bockstein.total, {1, 0, 0, 1}),
          "projective three-space bockstein dims");

  dcp::ModelHomology b4 = dcp::model_homology(braid(4));
  REQUIRE(dims_eq(b4.bockstein.total, {1, 4}), "braid(4) bockstein dims");

  dcp::ModelHomology b5 = dcp::model_homology(braid(5));
  REQUIRE(dims_eq(b5.bockstein.total, {1, 10, 9}), "braid(5) bockstein dims");

  dcp::ModelHomology gv = dcp::model_homology(plane_and_full());
  REQUIRE(dims_eq(gv.bockstein.total, {1, 1}), "plane arrangement bockstein dims");

  dcp::ModelHomology tor = dcp::model_homology(two_blocks(2, 2));
  REQUIRE(dims_eq(tor.bockstein.total, {1, 2, 1}), "torus bockstein dims");

  for (const dcp::ModelHomology* m : {&s3, &s4, &b4, &b5, &gv, &tor})
    REQUIRE(dims_eq(m->bockstein.total, dcp::bockstein_prediction(m->integral_total)),
            "bockstein dims match the integral prediction");
  for (size_t i = 0; i < b4.bockstein.rows.size(); i++)
    REQUIRE(dims_eq(b4.bockstein.rows[i].dims,
                    dcp::bockstein_prediction(b4.integral[i].groups)),
            "graded bockstein dims match the graded prediction");
  PASS("bockstein tables");
}

void test_integral() {
  dcp::ModelHomology s2 = dcp::model_homology(single(2));
  REQUIRE(same_groups(s2.integral_total, {{0, grp(1, {})}, {1, grp(1, {})}}),
          "circle homology");

  dcp::ModelHomology s4 = dcp::model_homology(single(4));
  REQUIRE(same_groups(s4.integral_total,
                      {{0, grp(1, {})}, {1, grp(0, {2})}, {3, grp(1, {})}}),
          "projective three-space homology");

  dcp::ModelHomology s5 = dcp::model_homology(single(5));
  REQUIRE(same_groups(s5.integral_total,
                      {{0, grp(1, {})}, {1, grp(0, {2})}, {3, grp(0, {2})}}),
          "projective four-space homology");

  dcp::ModelHomology b3 = dcp::model_homology(braid(3));
  REQUIRE(same_groups(b3.integral_total, {{0, grp(1, {})}, {1, grp(1, {})}}),
          "braid(3) homology");

  dcp::ModelHomology b4 = dcp::model_homology(braid(4));
  REQUIRE(same_groups(b4.integral_total, {{0, grp(1, {})}, {1, grp(4, {2})}}),
          "braid(4) homology");

  dcp::ModelHomology b5 = dcp::model_homology(braid(5));
  REQUIRE(same_groups(b5.integral_total,
                      {{0, grp(1, {})},
                       {1, grp(10, {2, 2, 2, 2, 2, 2})},
                       {2, grp(9, {2})}}),
          "braid(5) homology");
  const dcp::TableRow* root5 = nullptr;
  for (const auto& r : b5.integral)
    if (r.space == part_space(5, {{0, 1, 2, 3, 4}})) root5 = &r;
  REQUIRE(root5 != nullptr, "braid(5) root grade present");
  REQUIRE(same_groups(root5->groups, {{1, grp(0, {2})}, {2, grp(9, {2})}}),
          "braid(5) root grade homology");

  dcp::ModelHomology gv = dcp::model_homology(plane_and_full());
  REQUIRE(same_groups(gv.integral_total,
                      {{0, grp(1, {})}, {1, grp(1, {2})}, {2, grp(0, {2})}}),
          "plane arrangement homology");

  dcp::ModelHomology tor = dcp::model_homology(two_blocks(2, 2));
  REQUIRE(same_groups(tor.integral_total,
                      {{0, grp(1, {})}, {1, grp(2, {})}, {2, grp(1, {})}}),
          "torus homology");

  dcp::ModelHomology prod = dcp::model_homology(two_blocks(2, 4));
  REQUIRE(same_groups(prod.integral_total,
                      {{0, grp(1, {})},
                       {1, grp(1, {2})},
                       {2, grp(0, {2})},
                       {3, grp(1, {})},
                       {4, grp(1, {})}}),
          "circle times projective three-space homology");

  dcp::ModelHomology ax = dcp::model_homology(axes(4));
  REQUIRE(same_groups(ax.integral_total, {{0, grp(1, {})}}),
          "coordinate model homology");

  for (const dcp::ModelHomology* m : {&b5, &gv}) {
    auto global = dcp::synthesize_integral(m->table.total, m->mod2.total);
    REQUIRE(same_groups(global, m->integral_total),
            "global synthesis agrees with the graded sum");
  }
  PASS("integral synthesis");
}

void test_synthesis_edges() {
  std::map<long, dcp::HomologyGroup> t1 = {{0, grp(1, {})}, {1, grp(2, {12})}};
  auto h1 = dcp::synthesize_integral(t1, {1, 3, 1});
  REQUIRE(same_groups(h1, {{0, grp(1, {})}, {1, grp(2, {12})}}),
          "torsion divisible by four lifts verbatim");

  std::map<long, dcp::HomologyGroup> t2 = {{1, grp(0, {2, 6})}};
  auto h2 = dcp::synthesize_integral(t2, {});
  REQUIRE(same_groups(h2, {{1, grp(0, {3})}}), "odd parts survive bare twos");

  auto h3 = dcp::synthesize_integral({}, {0, 1, 1});
  REQUIRE(same_groups(h3, {{1, grp(0, {2})}}), "order-two summand from the count");

  std::map<long, dcp::HomologyGroup> bad = {{0, grp(1, {})}};
  REQUIRE_THROWS(dcp::synthesize_integral(bad, {}), dcp::internal_error,
                 "negative count is an internal error");
  PASS("synthesis edge cases");
}

}  // namespace

void test_parallel() {
  dcp::BuildingSet b = braid(4);
  dcp::ModelHomology one = dcp::model_homology(b);
  dcp::ModelHomology four = dcp::model_homology(b, dcp::kDefaultMaxLattice, 4);
  REQUIRE(same_groups(four.integral_total, one.integral_total),
          "parallel integral total matches");
  REQUIRE(four.mod2.total == one.mod2.total, "parallel mod-2 total matches");
  REQUIRE(four.bockstein.total == one.bockstein.total,
          "parallel bockstein total matches");
  REQUIRE(four.table.rows.size() == one.table.rows.size(),
          "parallel table has the same rows");
  for (size_t i = 0; i < one.table.rows.size(); i++) {
    REQUIRE(four.table.rows[i].grade == one.table.rows[i].grade,
            "parallel row order matches");
    REQUIRE(same_groups(four.table.rows[i].groups, one.table.rows[i].groups),
            "parallel row groups match");
  }

  dcp::ForestOracle o(b);
  dcp::Subspace root = part_space(4, {{0, 1, 2, 3}});
  const std::vector<dcp::Forest>& f1 = o.forests(root, 1);
  const std::vector<dcp::Forest>& f2 = o.forests(root, 1);
  REQUIRE(&f1 == &f2, "forest enumeration memoized");
  REQUIRE(f1 == dcp::enumerate_forests(o, root, 1), "memo matches enumeration");

  dcp::ForestOracle fresh(b);
  fresh.absorb_enumerations(o);
  const std::vector<dcp::Forest>& f3 = fresh.forests(root, 1);
  REQUIRE(f3 == f1, "absorbed enumeration is reused");
  dcp::ForestOracle pre(b);
  pre.preload_enumeration(root.key(), 1, f1);
  REQUIRE(pre.forests(root, 1) == f1, "preloaded enumeration is served");
  REQUIRE_THROWS(pre.preload_enumeration(root.key(), 2,
                                         {dcp::Forest{{99}}}),
                 dcp::input_error, "out-of-range preload rejected");
  PASS("parallel tables and enumeration memo");
}

int main() {
  test_tables();
  test_mod2();
  test_bockstein_values();
  test_bockstein_identities();
  test_bockstein_tables();
  test_integral();
  test_synthesis_edges();
  test_parallel();
  if (g_failures == 0) PASS("homology synthesis suite complete");
  return g_failures == 0 ? 0 : 1;
}
