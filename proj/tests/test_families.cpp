#include "dcp/families.hpp"

#include <algorithm>

#include "dcp/dcphom.hpp"
#include "dcp/errors.hpp"
#include "dcp/posetcx.hpp"
#include "support.hpp"

using namespace dcp;

namespace {

Vec vec(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(x);
  return v;
}

void test_braid() {
  REQUIRE_THROWS(braid_generators(1), input_error, "braid needs n >= 2");
  REQUIRE(braid_generators(2).size() == 1, "braid(2) is one line");
  std::vector<Subspace> lines = braid_generators(3);
  REQUIRE(lines.size() == 3, "braid(3) has three lines");
  for (const Subspace& s : lines)
    REQUIRE(s.ambient() == 3 && s.dim() == 1, "braid generators are lines");
  REQUIRE(lines[0].contains(vec({1, -1, 0})), "first line is <e0 - e1>");

  BuildingSet b3 = closure(3, lines);
  REQUIRE(b3.gens.size() == 4, "braid(3) closure adds the triple sum");

  BuildingSet b4 = closure(4, braid_generators(4));
  REQUIRE(b4.gens.size() == 11, "braid(4) closure has 11 generators");
  Lattice l4 = generate_lattice(b4);
  REQUIRE(l4.elems.size() == 15, "braid(4) lattice matches partitions of 4");

  PASS("braid family");
}

void test_boolean_graphic() {
  REQUIRE_THROWS(boolean_generators(0), input_error, "boolean needs n >= 1");
  std::vector<Subspace> axes = boolean_generators(2);
  REQUIRE(axes.size() == 2, "boolean(2) has two axes");
  BuildingSet b = closure(2, axes);
  REQUIRE(b.gens.size() == 2, "independent axes are already closed");
  REQUIRE(generate_lattice(b).elems.size() == 4, "boolean(2) lattice is 2^2");

  std::vector<Subspace> path = graphic_generators(3, {{0, 1}, {1, 2}});
  REQUIRE(path.size() == 2, "path graph gives two lines");
  REQUIRE(path[0] == braid_generators(3)[0], "edge {0,1} is the braid line");
  REQUIRE(path[1] == braid_generators(3)[2], "edge {1,2} is the braid line");
  REQUIRE(graphic_generators(3, {}).empty(), "edgeless graph is allowed");
  REQUIRE_THROWS(graphic_generators(3, {{1, 1}}), input_error, "loop rejected");
  REQUIRE_THROWS(graphic_generators(3, {{0, 3}}), input_error,
                 "endpoint out of range rejected");
  REQUIRE_THROWS(graphic_generators(3, {{0, 1}, {1, 0}}), input_error,
                 "repeated edge rejected");

  PASS("boolean and graphic families");
}

void test_realify() {
  // The complex line <(1, i)> in C^2.
  CMat row = {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
  Subspace s = realify_subspace(2, row);
  REQUIRE(s.ambient() == 4 && s.dim() == 2, "complex line realifies to a plane");
  REQUIRE(s.contains(vec({1, 0, 0, 1})), "contains (Re v, Im v)");
  REQUIRE(s.contains(vec({0, -1, 1, 0})), "contains (Re iv, Im iv)");
  CMat scaled = {{{Rat(2), Rat(2)}, {Rat(-2), Rat(2)}}};  // (1 + i) v
  REQUIRE(realify_subspace(2, scaled) == s, "complex rescaling fixes the real form");
  REQUIRE_THROWS(realify_subspace(2, CMat{{{Rat(1), Rat(0)}}}), input_error,
                 "row length must match complex_dim");

  // Complex braid A2: difference lines in C^3.
  std::vector<CMat> clines;
  for (const Subspace& g : braid_generators(3)) {
    CVec v;
    for (const Rat& x : g.rows()[0]) v.push_back({x, Rat(0)});
    clines.push_back({v});
  }
  std::vector<Subspace> real = realify_generators(3, clines);
  REQUIRE(real.size() == 3, "three realified lines");
  for (const Subspace& g : real)
    REQUIRE(g.ambient() == 6 && g.dim() == 2, "realified lines are planes");
  BuildingSet b = closure(6, real);
  REQUIRE(b.gens.size() == 4, "realified A2 closure adds the 4-dim top");

  // Every lattice member of a realified set is divisible by 2.
  Lattice l = generate_lattice(b);
  PosetView v2(b, l, 2);
  REQUIRE(v2.members().size() == l.elems.size(),
          "2-divisible poset of a realified set is the whole lattice");

  PASS("realified complex arrangements");
}

void test_load_raw() {
  BuildingSet b = load_arrangement(
      R"({"ambient_dim": 3, "generators": [[["1","0","0"]], [[0, "1", 0]]]})");
  REQUIRE(b.ambient == 3 && b.gens.size() == 2, "raw form parses");
  REQUIRE(b.gens[0].dim() == 1 && b.gens[1].dim() == 1, "raw generators are lines");

  BuildingSet h = load_arrangement(
      R"({"ambient_dim": 2, "generators": [[["1","0"],["0","1"]]],)"
      R"( "generators": [[["1/2","0"],["0","3"]]]})");
  REQUIRE(h.gens.size() == 1 && h.gens[0].dim() == 2, "rational entries parse");

  REQUIRE_THROWS(load_arrangement("not json"), input_error, "invalid JSON");
  REQUIRE_THROWS(load_arrangement("[1, 2]"), input_error, "top level must be an object");
  REQUIRE_THROWS(load_arrangement(R"({"ambient_dim": 2})"), input_error,
                 "missing generators");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [], "extra": 1})"),
                 input_error, "unknown field rejected");
  REQUIRE_THROWS(load_arrangement(R"({"ambient_dim": 0, "generators": []})"),
                 input_error, "ambient_dim must be positive");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [[["1"]]]})"),
                 input_error, "row length mismatch");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [[]]})"),
                 input_error, "empty generator rejected");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [[["0","0"]]]})"),
                 input_error, "zero generator rejected");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [[["x","0"]]]})"),
                 input_error, "bad rational rejected");
  REQUIRE_THROWS(load_arrangement(
                     R"({"ambient_dim": 2, "generators": [[["1/0","0"]]]})"),
                 input_error, "zero denominator rejected");

  PASS("raw JSON arrangements");
}

void test_load_families() {
  BuildingSet b4 = load_arrangement(R"({"family": {"name": "braid", "n": 4}})");
  REQUIRE(b4.ambient == 4 && b4.gens.size() == 11, "braid family loads closed");

  BuildingSet bool3 = load_arrangement(R"({"family": {"name": "boolean", "n": 3}})");
  REQUIRE(bool3.ambient == 3 && bool3.gens.size() == 3, "boolean family loads");

  BuildingSet path = load_arrangement(
      R"({"family": {"name": "graphic", "n": 3, "edges": [[0,1],[1,2]]}})");
  REQUIRE(path.ambient == 3 && path.gens.size() == 2,
          "independent graphic lines are already closed");

  BuildingSet re = load_arrangement(
      R"({"family": {"name": "realify", "complex_dim": 2,)"
      R"( "generators": [[[["1","0"],["0","1"]]]]}})");
  REQUIRE(re.ambient == 4 && re.gens.size() == 1 && re.gens[0].dim() == 2,
          "realify family loads");

  BuildingSet prod = load_arrangement(
      R"({"family": {"name": "product", "factors": [)"
      R"(  {"family": {"name": "braid", "n": 3}},)"
      R"(  {"ambient_dim": 2, "generators": [[["1","0"],["0","1"]]]}]}})");
  REQUIRE(prod.ambient == 5 && prod.gens.size() == 5,
          "product embeds both factors");
  int block1 = 0, block2 = 0;
  for (const Subspace& g : prod.gens) {
    bool in1 = true, in2 = true;
    for (const Vec& r : g.rows()) {
      for (int i = 3; i < 5; i++) in1 = in1 && r[i] == 0;
      for (int i = 0; i < 3; i++) in2 = in2 && r[i] == 0;
    }
    block1 += in1;
    block2 += in2;
  }
  REQUIRE(block1 == 4 && block2 == 1, "product generators stay in their blocks");

  // Torus end to end: product of two full planes is S^1 x S^1.
  BuildingSet torus = load_arrangement(
      R"({"family": {"name": "product", "factors": [)"
      R"(  {"ambient_dim": 2, "generators": [[["1","0"],["0","1"]]]},)"
      R"(  {"ambient_dim": 2, "generators": [[["1","0"],["0","1"]]]}]}})");
  Mod2Table m2 = mod2_table(generate_lattice(torus), ForestOracle(torus));
  REQUIRE((m2.total == std::vector<long>{1, 2, 1}), "product model is a torus");

  REQUIRE_THROWS(load_arrangement(R"({"family": {"name": "cyclic", "n": 3}})"),
                 input_error, "unknown family rejected");
  REQUIRE_THROWS(load_arrangement(R"({"family": {"name": "braid"}})"),
                 input_error, "missing family parameter");
  REQUIRE_THROWS(load_arrangement(
                     R"({"family": {"name": "braid", "n": 3, "m": 1}})"),
                 input_error, "unknown family field rejected");
  REQUIRE_THROWS(load_arrangement(
                     R"({"family": {"name": "braid", "n": 3}, "ambient_dim": 3})"),
                 input_error, "family excludes other top-level fields");
  REQUIRE_THROWS(load_arrangement(R"({"family": {"name": "braid", "n": "3"}})"),
                 input_error, "n must be an integer");
  REQUIRE_THROWS(load_arrangement(
                     R"({"family": {"name": "graphic", "n": 3, "edges": [[0]]}})"),
                 input_error, "edge arity checked");
  REQUIRE_THROWS(load_arrangement(
                     R"({"family": {"name": "product", "factors": [)"
                     R"({"family": {"name": "braid", "n": 3}}]}})"),
                 input_error, "product needs two factors");
  REQUIRE_THROWS(load_arrangement(
                     R"({"family": {"name": "realify", "complex_dim": 2,)"
                     R"( "generators": [[[["1","0"]]]]}})"),
                 input_error, "complex row length checked");

  PASS("family JSON arrangements");
}

}  // namespace

int main() {
  test_braid();
  test_boolean_graphic();
  test_realify();
  test_load_raw();
  test_load_families();
  if (g_failures) {
    std::printf("[FAIL] %d check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("[PASS] families suite complete\n");
  return 0;
}
