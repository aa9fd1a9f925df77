#pragma once

// Exact linear algebra over Q and Z: canonical subspaces, pullbacks,
// Smith normal form, homology of integer chain complexes.
//
// Conventions used throughout the library:
//  - Arrangement data lives in the dual space: a Subspace is the row span
//    of rational functionals on Q^ambient, stored in reduced row echelon
//    form, so equal subspaces have byte-identical keys.
//  - A linear map f: V -> V' enters only through its pullback f* on
//    functionals; DualMap stores the matrix of f*, acting on row vectors
//    from the right: f*(phi) = phi * mat.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "dcp/errors.hpp"

namespace dcp {

using Rat = mpq_class;
using Int = mpz_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

std::string rat_str(const Rat& x);
Rat parse_rat(const std::string& s);

// In-place reduced row echelon form; drops zero rows; returns rank.
int rref(Mat& m);

class Subspace {
 public:
  Subspace() = default;
  static Subspace span(int ambient, Mat vectors);
  static Subspace zero(int ambient);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  const Mat& rows() const { return rows_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  // Canonical byte key; equality of keys is equality of subspaces.
  const std::string& key() const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;  // by (dim, key)

 private:
  int ambient_ = 0;
  Mat rows_;
  mutable std::string key_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool is_direct(const std::vector<Subspace>& parts);

// Null space of the row span under the standard dot product; canonical.
Subspace annihilator(const Subspace& s);

struct DualMap {
  int dom = 0;  // ambient of functionals being pulled back
  int cod = 0;  // ambient of the resulting functionals
  Mat mat;      // dom x cod

  Vec apply(const Vec& phi) const;
};

// Composite (g then f applied to a functional): phi |-> f(g-side) ... for
// linear maps u: V -> V', v: V' -> V'' with pullbacks u*, v*, the pullback
// of v o u is u* o v*; compose(a, b) returns "b after a" on functionals.
DualMap compose(const DualMap& a, const DualMap& b);

Subspace pullback(const DualMap& f, const Subspace& g);
Subspace kernel_dual(const DualMap& f);

using IntMatrix = std::vector<std::vector<Int>>;

long int_rank(const IntMatrix& m);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
bool int_is_zero(const IntMatrix& m);
IntMatrix int_transpose(const IntMatrix& m);
IntMatrix int_scale(const IntMatrix& m, const Int& c);

struct SNFResult {
  std::vector<Int> factors;  // nonzero invariant factors, each dividing the next
  long rank() const { return static_cast<long>(factors.size()); }
};

SNFResult smith_normal_form(IntMatrix m);

struct HomologyGroup {
  long rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, ascending divisibility

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  std::string str() const;
};

// Homology at a spot of dimension dim_here with outgoing boundary `out`
// (from this degree) and incoming boundary `in` (into this degree).
// Matrices use the column convention: entry [i][j] is the coefficient of
// target basis element i in the boundary of source basis element j.
HomologyGroup homology_at(const IntMatrix& out, const IntMatrix& in, long dim_here);

// Degree-indexed integer chain complex. d[i] is the boundary from degree
// min_deg + i into degree min_deg + i - 1; d[0] must be empty (zero map).
struct ChainComplex {
  long min_deg = 0;
  std::vector<long> dims;
  std::vector<IntMatrix> d;

  long max_deg() const { return min_deg + static_cast<long>(dims.size()) - 1; }
  long dim_at(long k) const;
  const IntMatrix& d_at(long k) const;  // boundary from degree k
  void validate() const;                // shapes and d o d = 0

  HomologyGroup homology(long k) const;
  std::map<long, HomologyGroup> homology_all() const;
};

std::map<long, HomologyGroup> complex_homology(const ChainComplex& c);

// Direct sum of homology groups, degreewise merge.
void add_group(std::map<long, HomologyGroup>& acc, long deg, const HomologyGroup& g);

}  // namespace dcp
