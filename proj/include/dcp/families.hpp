// Generator constructions for standard arrangement families and JSON input.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dcp/buildcore.hpp"

namespace dcp {

// Lines spanned by e_i - e_j in R^n, one per pair i < j.  Requires n >= 2.
std::vector<Subspace> braid_generators(int n);

// Coordinate axes of R^n.  Requires n >= 1.
std::vector<Subspace> boolean_generators(int n);

// Lines spanned by e_i - e_j, one per edge {i, j} of a graph on vertices
// 0..n-1.  Loops, repeated edges, and out-of-range endpoints are rejected.
std::vector<Subspace> graphic_generators(int n,
                                         const std::vector<std::pair<int, int>>& edges);

// A complex vector is a list of (real, imaginary) rational pairs; a complex
// subspace is given by a list of spanning rows.
using CVec = std::vector<std::pair<Rat, Rat>>;
using CMat = std::vector<CVec>;

// Real form of a complex subspace of C^d inside R^(2d), coordinates ordered
// as (real parts, imaginary parts).  Each spanning row v contributes the two
// real rows (Re v, Im v) and (-Im v, Re v), so every dimension doubles.
Subspace realify_subspace(int complex_dim, const CMat& rows);

std::vector<Subspace> realify_generators(int complex_dim,
                                         const std::vector<CMat>& gens);

// Parse an arrangement description and return the building-set closure of
// its generators.  Two top-level forms are accepted:
//
//   {"ambient_dim": d, "generators": [[["p/q", ...], ...], ...]}
//     each generator a nonempty list of spanning rows of length d, entries
//     rational strings or integers;
//
//   {"family": {"name": ..., ...}}
//     "braid"   params "n";
//     "boolean" params "n";
//     "graphic" params "n", "edges" (pairs of vertices 0..n-1);
//     "realify" params "complex_dim", "generators" (complex entries are
//               two-element arrays [re, im]);
//     "product" params "factors" (two or more arrangement objects of either
//               form, combined in order).
//
// Unknown fields anywhere are rejected with input_error.
BuildingSet load_arrangement(const std::string& text,
                             int max_lattice = kDefaultMaxLattice);

}  // namespace dcp
