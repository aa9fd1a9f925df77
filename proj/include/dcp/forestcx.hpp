#pragma once

// Forests over a building set, their chain complexes, the comparison map
// sigma into interval chains, and doubled forest cohomology.

#include <map>
#include <vector>

#include "dcp/posetcx.hpp"

namespace dcp {

// Node set of a forest, as ascending generator indices.
struct Forest {
  std::vector<int> nodes;

  long size() const { return static_cast<long>(nodes.size()); }
  bool operator==(const Forest& o) const { return nodes == o.nodes; }
  bool operator<(const Forest& o) const { return nodes < o.nodes; }
};

// Containment structure over the generators with memoized subset sums;
// answers forest validity questions.
class ForestOracle {
 public:
  explicit ForestOracle(const BuildingSet& b);

  const BuildingSet& building() const { return b_; }
  bool gen_contains(int i, int j) const { return contains_[i][j]; }  // gens[i] >= gens[j]
  bool comparable(int i, int j) const { return contains_[i][j] || contains_[j][i]; }

  // Sum of a set of generator indices (memoized).
  const Subspace& sum_of(const std::vector<int>& nodes) const;

  // Every pairwise incomparable subset must be a decomposition.
  bool is_forest(const std::vector<int>& nodes) const;

  // Given that `nodes` is a forest, whether nodes + {g} still is.
  bool valid_extension(const std::vector<int>& nodes, int g) const;

  Subspace root(const Forest& f) const;
  std::vector<int> maximal_nodes(const Forest& f) const;

  // Sum of the nodes strictly below g in f (the child subspace).
  Subspace child(const Forest& f, int g) const;

  // Minimal node of f strictly containing g; -1 if none.
  int parent(const Forest& f, int g) const;

  // Memoized forest enumeration keyed by (root key, m); repeated table
  // passes over the same grade reuse one enumeration.
  const std::vector<Forest>& forests(const Subspace& root, int m) const;

  // Memo exchange for worker merges and the disk cache.
  struct EnumerationEntry {
    std::string root_key;
    int m = 1;
    std::vector<Forest> forests;
  };
  std::vector<EnumerationEntry> enumeration_snapshot() const;
  void preload_enumeration(const std::string& root_key, int m,
                           std::vector<Forest> fs) const;
  void absorb_enumerations(const ForestOracle& other) const;

 private:
  bool antichain_ok(const std::vector<int>& parts) const;

  const BuildingSet& b_;
  std::vector<std::vector<bool>> contains_;
  mutable std::map<std::vector<int>, Subspace> sums_;
  mutable std::map<std::vector<int>, std::vector<char>> gen_in_sum_;
  mutable std::map<std::pair<std::string, int>, std::vector<Forest>> forest_memo_;
};

// All forests with the given root whose node dimensions are divisible by
// m. root = 0 yields the empty forest; a root outside the lattice is an
// input error.
std::vector<Forest> enumerate_forests(const ForestOracle& o, const Subspace& root, int m = 1);

struct ForestComplex {
  int root = 0;  // lattice index
  bool doubled = false;
  ChainComplex cx;
  std::vector<std::vector<Forest>> basis;  // per degree, offset cx.min_deg

  const std::vector<Forest>& basis_at(long k) const;
  int forest_index(const Forest& f) const;  // -1 if absent

 private:
  friend ForestComplex forest_complex(const PosetView&, const ForestOracle&, int, bool);
  std::vector<std::map<Forest, int>> index_;
};

// Chain complex of m-divisible forests rooted at the given poset member.
// Deleting the non-maximal node at 1-based position i carries (-1)^i,
// doubled if requested.
ForestComplex forest_complex(const PosetView& v, const ForestOracle& o, int root,
                             bool doubled);

// Sum over linear extensions of the forest with the permutation sign; the
// image is the signed sum of partial-sum chains in [0, root].
std::vector<std::pair<PosetChain, Int>> sigma(const PosetView& v, const ForestOracle& o,
                                              const Forest& f);

// Matrix of sigma in degree k between the two fixed bases.
IntMatrix sigma_matrix(const PosetView& v, const ForestOracle& o, const ForestComplex& fc,
                       const IntervalComplex& ic, long k);

// Homology of the mapping cone of sigma; all trivial iff sigma is a
// quasi-isomorphism.
std::map<long, HomologyGroup> sigma_cone_homology(const PosetView& v, const ForestOracle& o,
                                                  int root);

// Cohomology of the doubled forest complex of the restriction to the
// given poset member, reported at degree dim(root) - k.
std::map<long, HomologyGroup> doubled_forest_cohomology(const PosetView& v,
                                                        const ForestOracle& o, int root);

}  // namespace dcp
