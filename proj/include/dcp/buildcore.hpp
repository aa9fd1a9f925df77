#pragma once

// Building sets and their combinatorics: sum lattices, finest
// decompositions, closure into a building set, restriction and quotient,
// classification of dual linear maps, hyperplane adjunction test.

#include <vector>

#include "dcp/exactlinalg.hpp"

namespace dcp {

struct BuildingSet {
  int ambient = 0;
  std::vector<Subspace> gens;  // sorted by (dim, key), distinct, nonzero

  // Sorts, deduplicates, drops zero subspaces; does not close.
  static BuildingSet make(int ambient, std::vector<Subspace> gens);

  int gen_index(const Subspace& g) const;  // -1 if absent
  bool has_gen(const Subspace& g) const { return gen_index(g) >= 0; }
  std::string key() const;  // canonical serialization
};

constexpr int kDefaultMaxLattice = 20000;

struct Lattice {
  std::vector<Subspace> elems;  // elems[0] = zero, then sorted by (dim, key)

  int find(const Subspace& s) const;
  int require(const Subspace& s) const;  // internal_error if absent
  size_t size() const { return elems.size(); }

 private:
  friend Lattice generate_lattice(const BuildingSet&, int);
  friend Lattice lattice_from_elements(std::vector<Subspace>);
  std::map<std::string, int> index_;
};

// All subset sums of the generators, zero included.
Lattice generate_lattice(const BuildingSet& b, int max_elems = kDefaultMaxLattice);

// Rebuilds a lattice from a stored element list; elems[0] must be the
// zero subspace and the rest sorted by (dim, key) with no duplicates.
Lattice lattice_from_elements(std::vector<Subspace> elems);

using Decomposition = std::vector<Subspace>;  // sorted by (dim, key)

// Finest decomposition of c into lattice elements such that every
// generator below c lies in exactly one part. c = 0 gives no parts.
Decomposition decompose(const BuildingSet& b, const Subspace& c);

// Parts are independent and every generator below their sum lies in
// exactly one part.
bool is_decomposition(const BuildingSet& b, const std::vector<Subspace>& parts);

bool is_indecomposable(const BuildingSet& b, const Subspace& c);

// Indecomposable elements of the sum lattice of arbitrary subspaces; the
// result is a building set with the same lattice.
BuildingSet closure(int ambient, const std::vector<Subspace>& subs,
                    int max_elems = kDefaultMaxLattice);

bool is_building(const BuildingSet& b, const Lattice& l);

// Lattice meet: sum of all generators below the intersection (not the
// intersection itself in general).
Subspace meet(const BuildingSet& b, const Subspace& c, const Subspace& d);

// Generators below w (the restriction of the arrangement to w).
BuildingSet restrict_to(const BuildingSet& b, const Subspace& w);

// Quotient arrangement by a lattice element c: images of the generators
// not below c in coordinates for the complement of c (the non-pivot
// columns of c's reduced basis), defensively closed into a building set.
struct QuotientResult {
  BuildingSet building;        // ambient = b.ambient - dim(c)
  DualMap q;                   // functional on V -> functional on V/c
  bool closure_changed = false;
};

QuotientResult quotient(const BuildingSet& b, const Subspace& c,
                        int max_elems = kDefaultMaxLattice);

// Dual map of the coordinate projection used by quotient().
DualMap quotient_map(const Subspace& c);

enum class MapClass { invalid, morphism, purely_operadic, weak };

std::string map_class_name(MapClass c);

// Classify fstar as the pullback of a linear map from the space of src to
// the space of dst; fstar.dom = dst ambient, fstar.cod = src ambient.
// Precedence: invalid, morphism, purely operadic, weak.
MapClass classify_map(const BuildingSet& src, const BuildingSet& dst,
                      const Lattice& dst_lattice, const DualMap& fstar);

// Whether adjoining the hyperplane functional v keeps the set building:
// every lattice element containing v must contain a generator through v.
bool hyperplane_adjoinable(const BuildingSet& b, const Lattice& l, const Vec& v);

}  // namespace dcp
