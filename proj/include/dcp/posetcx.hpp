#pragma once

// The m-divisible poset inside a building-set lattice, interval chain
// complexes over it, Whitney-style per-element homology, and the
// complement homology of the arrangement.

#include <map>
#include <vector>

#include "dcp/buildcore.hpp"

namespace dcp {

// Chain 0 < A_1 < ... < A_k stored as the lattice indices [A_1 .. A_k],
// the top included; the bare chain (0) is the empty list. The degree is
// the number of stored elements.
struct PosetChain {
  std::vector<int> elems;

  long degree() const { return static_cast<long>(elems.size()); }
  int top(int zero_index = 0) const { return elems.empty() ? zero_index : elems.back(); }
  bool operator==(const PosetChain& o) const { return elems == o.elems; }
  bool operator<(const PosetChain& o) const { return elems < o.elems; }
};

class PosetView {
 public:
  PosetView(const BuildingSet& b, const Lattice& l, int m);

  int m() const { return m_; }
  const BuildingSet& building() const { return b_; }
  const Lattice& lattice() const { return l_; }

  bool in_poset(int elem) const { return member_[elem]; }
  const std::vector<int>& members() const { return members_; }
  bool leq(int a, int b) const;  // containment of lattice elements

 private:
  const BuildingSet& b_;
  const Lattice& l_;
  int m_;
  std::vector<bool> member_;
  std::vector<int> members_;
};

// Chain complex of the closed interval [0, top] in the m-divisible poset.
struct IntervalComplex {
  int top = 0;  // lattice index
  ChainComplex cx;
  std::vector<std::vector<PosetChain>> basis;  // per degree, offset cx.min_deg

  const std::vector<PosetChain>& basis_at(long k) const;
  int chain_index(const PosetChain& c) const;  // -1 if absent

 private:
  friend IntervalComplex interval_complex(const PosetView&, int);
  std::vector<std::map<PosetChain, int>> index_;
};

IntervalComplex interval_complex(const PosetView& v, int top);

// Per poset member, the homology of its interval complex.
std::vector<std::pair<int, std::map<long, HomologyGroup>>> whitney_homology(const PosetView& v);

// Cohomology of the interval complex of `top`, reported by cochain degree.
std::map<long, HomologyGroup> interval_cohomology(const PosetView& v, int top);

// Homology of the complement of the arrangement in the primal space:
// degree-reversed interval cohomology summed over the full lattice.
std::map<long, HomologyGroup> gm_complement_homology(const BuildingSet& b, const Lattice& l);

}  // namespace dcp
