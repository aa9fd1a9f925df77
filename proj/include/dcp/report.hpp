// Canonical arrangement hashing, text and JSON rendering of computed
// tables, and the verification suites surfaced by the command line tool.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcp/dcphom.hpp"

namespace dcp {

// FNV-1a 64-bit hash of the canonical arrangement serialization, in hex.
std::string arrangement_key(const BuildingSet& b);

// One graded output row; carries a dimension vector or graded groups,
// the unused field stays empty.
struct ReportRow {
  std::string subspace;  // canonical key
  int dim = 0;
  std::vector<long> dims;
  std::map<long, HomologyGroup> groups;
};

struct Report {
  std::string title;  // rendered heading, e.g. "integral homology"
  std::string key;    // arrangement_key
  bool dims_only = false;
  std::vector<ReportRow> rows;
  std::vector<long> total_dims;
  std::map<long, HomologyGroup> total_groups;
};

// JSON form: {"arrangement_key": ..., "graded": [{"subspace", "dims",
// "groups": [{"degree", "rank", "torsion"}]}], "total": [...]}.
std::string render_json(const Report& r);
std::string render_text(const Report& r);

// Listing renders for the closure, lattice, and poset commands. The
// closure JSON round-trips as arrangement input once the hash field is
// removed; lattice and poset listings carry elements (poset adds "m").
std::string closure_json(const BuildingSet& b);
std::string closure_text(const BuildingSet& b);
std::string elements_json(const BuildingSet& b, const std::vector<Subspace>& elems, int m);
std::string elements_text(const std::string& title, const BuildingSet& b,
                          const std::vector<Subspace>& elems);

// One verification suite outcome; notes hold failure detail.
struct SuiteResult {
  std::string name;
  long checks = 0;
  bool passed = true;
  std::vector<std::string> notes;
};

// sigma cone acyclicity (chain-map identity plus quasi-isomorphism) at
// every member of the 2-divisible and full posets.
SuiteResult verify_chain(const BuildingSet& b, const Lattice& l);

// Boundary commutation of cooperad pullbacks for sampled quotient maps
// and the composition law for sampled quotient pairs.
SuiteResult verify_operad(const BuildingSet& b, const Lattice& l, unsigned seed);

// Product with a circle factor: mod-2 Poincaré polynomial multiplies and
// the free and odd parts of the reduced table convolve.
SuiteResult verify_kunneth(const BuildingSet& b, int max_lattice, int jobs);

// Bockstein dimensions match the prediction from the synthesized integral
// groups, per grade and in total.
SuiteResult verify_bockstein(const BuildingSet& b, int max_lattice, int jobs);

std::string verify_json(const std::string& key, const std::vector<SuiteResult>& suites);
std::string verify_text(const std::string& key, const std::vector<SuiteResult>& suites);

}  // namespace dcp
