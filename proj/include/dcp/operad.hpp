#pragma once

// Chain-level cooperad structure on Whitney complexes: pullback of a
// chain along a weak morphism into a tensor of chains, shuffle products
// into direct-sum arrangements, and exact verification of the chain-map
// and composition identities.

#include <memory>
#include <optional>
#include <string>

#include "dcp/posetcx.hpp"

namespace dcp {

// Chain 0 < S_1 < ... < S_k by value; top last, empty = degree zero.
using SpaceChain = std::vector<Subspace>;

SpaceChain to_spaces(const Lattice& l, const PosetChain& c);

// Faces deleting the interior element at 1-based position p with sign
// (-1)^p; the top is never deleted.
std::vector<std::pair<SpaceChain, Int>> space_chain_boundary(const SpaceChain& c);

// Arrangement bundled with its lattice and divisible poset.
class WhitneyCtx {
 public:
  WhitneyCtx(BuildingSet b, int m, int max_lattice = kDefaultMaxLattice);
  WhitneyCtx(const WhitneyCtx&) = delete;
  WhitneyCtx& operator=(const WhitneyCtx&) = delete;

  const BuildingSet& building() const { return b_; }
  const Lattice& lattice() const { return l_; }
  const PosetView& view() const { return v_; }
  int m() const { return v_.m(); }

 private:
  BuildingSet b_;
  Lattice l_;
  PosetView v_;
};

// Restriction to a subspace, same divisibility.
std::unique_ptr<WhitneyCtx> restrict_ctx(const WhitneyCtx& c, const Subspace& x);

// Weak morphism f from src to dst; fstar pulls dst functionals back to
// src functionals. Rejects maps that are not at least weak.
struct OperadMap {
  const WhitneyCtx* src = nullptr;
  const WhitneyCtx* dst = nullptr;
  DualMap fstar;
  MapClass cls = MapClass::invalid;
  Subspace kernel;  // ker fstar, in the dst ambient
};

OperadMap make_operad_map(const WhitneyCtx& src, const WhitneyCtx& dst, DualMap fstar);

struct TensorTerm {
  SpaceChain left;   // chain in dst restricted to ker fstar
  SpaceChain right;  // chain in src
};

// Cooperad pullback of one basis chain: zero unless top-and-kernel meet
// the chain; otherwise the chain splits at that index, the lower part
// kept, the upper part mapped through fstar. Coefficient is always +1.
std::optional<TensorTerm> pullback_chain(const OperadMap& f, const WhitneyCtx& ker_ctx,
                                         const SpaceChain& c);

// Direct sum of arrangements in the concatenated ambient space.
BuildingSet arrangement_sum(const BuildingSet& a, const BuildingSet& b);
Subspace embed_left(const Subspace& s, int extra);
Subspace embed_right(int extra, const Subspace& s);

// Shuffle product of chains into the direct-sum arrangement, signed by
// interleaving parity.
std::vector<std::pair<SpaceChain, Int>> shuffle_product(const SpaceChain& a, int amb_a,
                                                        const SpaceChain& b, int amb_b);

// Pullback composed with the shuffle into dst|ker + src.
std::vector<std::pair<SpaceChain, Int>> pullback_shuffled(const OperadMap& f,
                                                          const WhitneyCtx& ker_ctx,
                                                          const SpaceChain& c);

// Exact boundary commutation of the pullback over every basis chain of
// the dst poset. On failure, why receives the offending chain.
bool pullback_commutes(const OperadMap& f, const WhitneyCtx& ker_ctx,
                       std::string* why = nullptr);

// Exact boundary commutation of the shuffle product over every pair of
// basis chains of the two posets.
bool shuffle_commutes(const WhitneyCtx& a, const WhitneyCtx& b, std::string* why = nullptr);

// Composition law for f: a -> b, g: b -> c over every basis chain of c:
// pulling back along g then f agrees with pulling back along the
// composite then the induced map between the kernels. Returns the number
// of chains checked through checked (when given).
bool composition_law_ok(const WhitneyCtx& a, const WhitneyCtx& b, const WhitneyCtx& c,
                        const DualMap& fstar, const DualMap& gstar,
                        std::string* why = nullptr, long* checked = nullptr);

}  // namespace dcp
