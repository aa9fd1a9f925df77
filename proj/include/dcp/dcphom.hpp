#pragma once

#include <map>
#include <vector>

#include "dcp/buildcore.hpp"
#include "dcp/exactlinalg.hpp"
#include "dcp/forestcx.hpp"
#include "dcp/posetcx.hpp"

namespace dcp {

// One grade of a homology table: the grading subspace (a lattice element)
// and its groups by homological degree.
struct TableRow {
  int grade = 0;  // lattice index
  Subspace space;
  std::map<long, HomologyGroup> groups;
};

struct HomologyTable {
  std::vector<TableRow> rows;
  std::map<long, HomologyGroup> total;  // degreewise direct sum, nontrivial only
};

// Cohomology of the doubled forest complex at every member of the divisible
// poset, reindexed so that degree k at grade A sits at dim(A) - k.
// Rows computed by `jobs` workers and merged in poset order.
HomologyTable doubled_table(const PosetView& v, const ForestOracle& o,
                            int jobs = 1);

// Image of multiplication by two: every even torsion coefficient is halved
// and factors that become trivial are dropped; rank and odd torsion persist.
HomologyGroup halve_even_torsion(const HomologyGroup& g);
HomologyTable halve_even_torsion(const HomologyTable& t);

// Basis class of mod-2 homology: a forest with node weights. Weight w(G)
// ranges over 1 <= w(G) <= dim(G) - dim(child_F(G)) - 1, so a forest with a
// node that gains no dimension over its children carries no classes. The
// homological degree is the weight sum.
struct WeightedForest {
  Forest forest;
  std::vector<int> weights;  // parallel to forest.nodes

  long degree() const {
    long k = 0;
    for (int w : weights) k += w;
    return k;
  }
  bool operator==(const WeightedForest& o) const {
    return forest == o.forest && weights == o.weights;
  }
  bool operator<(const WeightedForest& o) const {
    if (forest < o.forest) return true;
    if (o.forest < forest) return false;
    return weights < o.weights;
  }
};

// All weighted forests with the given root, grouped by degree (index = degree,
// levels sorted). The zero root yields the single empty class in degree 0.
std::vector<std::vector<WeightedForest>> weighted_forests(const ForestOracle& o,
                                                          const Subspace& root);

// The two halves of the Bockstein differential, as lists of basis terms over
// F2 (repeats cancel in pairs). The adjoining half grafts a generator under
// even relative dimension e, giving it weight e - 1 and taking e from the
// weight of its new parent; terms where the parent weight would drop to zero
// vanish. The lowering half decrements one even weight.
std::vector<WeightedForest> bockstein_add(const ForestOracle& o,
                                          const Subspace& root,
                                          const WeightedForest& w);
std::vector<WeightedForest> bockstein_drop(const WeightedForest& w);

// Bockstein homology dimensions for one grade; verifies that the square of
// the differential vanishes.
std::vector<long> bockstein_dims(const ForestOracle& o, const Subspace& root);

// Dimension rows shared by the mod-2 and Bockstein tables.
struct DimsRow {
  int grade = 0;  // lattice index
  Subspace space;
  std::vector<long> dims;  // index = degree, trailing zeros trimmed
};

struct Mod2Table {
  std::vector<DimsRow> rows;  // one per lattice element
  std::vector<long> total;
};

struct BocksteinTable {
  std::vector<DimsRow> rows;  // one per lattice element
  std::vector<long> total;
};

Mod2Table mod2_table(const Lattice& l, const ForestOracle& o, int jobs = 1);
BocksteinTable bockstein_table(const Lattice& l, const ForestOracle& o,
                               int jobs = 1);

// Bockstein homology dimensions implied by integral groups: the rank plus
// the number of torsion factors divisible by four here and one degree below.
std::vector<long> bockstein_prediction(const std::map<long, HomologyGroup>& groups);

// Integral groups of one grade from its table row and mod-2 dimensions.
// Ranks and odd torsion carry over, torsion divisible by four carries over
// verbatim, bare factors of two are doubling artifacts and are dropped, and
// the number of order-two summands is fixed by the mod-2 dimension count
// b_k = r_k + s_k + p_k + s_{k-1} + p_{k-1}. A negative count is reported as
// an internal error.
std::map<long, HomologyGroup> synthesize_integral(
    const std::map<long, HomologyGroup>& table, const std::vector<long>& mod2);

// Full homology computation for one arrangement.
struct ModelHomology {
  HomologyTable table;    // doubled forest cohomology per divisible grade
  HomologyTable reduced;  // image-of-two table
  Mod2Table mod2;
  BocksteinTable bockstein;
  std::vector<TableRow> integral;  // synthesized groups, one row per grade
  std::map<long, HomologyGroup> integral_total;
};

ModelHomology model_homology(const BuildingSet& b,
                             int max_lattice = kDefaultMaxLattice, int jobs = 1);

// Variant reusing an already generated lattice and oracle.
ModelHomology model_homology(const BuildingSet& b, const Lattice& l,
                             const ForestOracle& o, int jobs = 1);

}  // namespace dcp
