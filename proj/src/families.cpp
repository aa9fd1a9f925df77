#include "dcp/families.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>

#include "dcp/errors.hpp"
#include "dcp/operad.hpp"

namespace dcp {

namespace {

using nlohmann::json;

Vec zero_vec(int n) { return Vec(n, Rat(0)); }

}  // namespace

std::vector<Subspace> braid_generators(int n) {
  if (n < 2) throw input_error("braid family requires n >= 2");
  std::vector<Subspace> out;
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      Vec v = zero_vec(n);
      v[i] = 1;
      v[j] = -1;
      out.push_back(Subspace::span(n, {v}));
    }
  return out;
}

std::vector<Subspace> boolean_generators(int n) {
  if (n < 1) throw input_error("boolean family requires n >= 1");
  std::vector<Subspace> out;
  for (int i = 0; i < n; i++) {
    Vec v = zero_vec(n);
    v[i] = 1;
    out.push_back(Subspace::span(n, {v}));
  }
  return out;
}

std::vector<Subspace> graphic_generators(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw input_error("graphic family requires n >= 1");
  std::set<std::pair<int, int>> seen;
  std::vector<Subspace> out;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw input_error("graphic edge endpoint out of range");
    if (a == b) throw input_error("graphic edge is a loop");
    auto e = std::minmax(a, b);
    if (!seen.insert({e.first, e.second}).second)
      throw input_error("graphic edge repeated");
    Vec v = zero_vec(n);
    v[e.first] = 1;
    v[e.second] = -1;
    out.push_back(Subspace::span(n, {v}));
  }
  return out;
}

Subspace realify_subspace(int complex_dim, const CMat& rows) {
  if (complex_dim < 1) throw input_error("complex_dim must be positive");
  Mat real;
  for (const CVec& v : rows) {
    if (static_cast<int>(v.size()) != complex_dim)
      throw input_error("complex row length must equal complex_dim");
    Vec re = zero_vec(2 * complex_dim);
    Vec im = zero_vec(2 * complex_dim);
    for (int i = 0; i < complex_dim; i++) {
      re[i] = v[i].first;
      re[complex_dim + i] = v[i].second;
      im[i] = -v[i].second;
      im[complex_dim + i] = v[i].first;
    }
    real.push_back(re);
    real.push_back(im);
  }
  return Subspace::span(2 * complex_dim, real);
}

std::vector<Subspace> realify_generators(int complex_dim,
                                         const std::vector<CMat>& gens) {
  std::vector<Subspace> out;
  for (const CMat& g : gens) out.push_back(realify_subspace(complex_dim, g));
  return out;
}

namespace {

void check_fields(const json& j, std::initializer_list<const char*> fields,
                  const char* where) {
  if (!j.is_object())
    throw input_error(std::string(where) + " must be a JSON object");
  for (const char* f : fields)
    if (!j.contains(f))
      throw input_error(std::string(where) + " is missing field \"" + f + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* f : fields)
      if (it.key() == f) known = true;
    if (!known)
      throw input_error(std::string(where) + " has unknown field \"" +
                        it.key() + "\"");
  }
}

int int_from(const json& j, const char* where) {
  if (!j.is_number_integer())
    throw input_error(std::string(where) + " must be an integer");
  long long v = j.get<long long>();
  if (v < -1000000 || v > 1000000)
    throw input_error(std::string(where) + " is out of range");
  return static_cast<int>(v);
}

Rat rat_from(const json& j, const char* where) {
  if (j.is_number_integer()) return Rat(int_from(j, where));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw input_error(std::string(where) +
                    " entries must be rational strings or integers");
}

Subspace subspace_from(const json& g, int ambient) {
  if (!g.is_array() || g.empty())
    throw input_error("each generator must be a nonempty list of rows");
  Mat rows;
  for (const json& r : g) {
    if (!r.is_array() || static_cast<int>(r.size()) != ambient)
      throw input_error("generator row length must equal ambient_dim");
    Vec v;
    for (const json& e : r) v.push_back(rat_from(e, "generator"));
    rows.push_back(v);
  }
  Subspace s = Subspace::span(ambient, rows);
  if (s.dim() == 0) throw input_error("generator spans only the zero subspace");
  return s;
}

CVec complex_row_from(const json& r) {
  if (!r.is_array()) throw input_error("complex row must be a list of entries");
  CVec v;
  for (const json& e : r) {
    if (!e.is_array() || e.size() != 2)
      throw input_error("complex entry must be a two-element array [re, im]");
    v.push_back({rat_from(e[0], "complex entry"), rat_from(e[1], "complex entry")});
  }
  return v;
}

BuildingSet parse_arrangement(const json& j, int max_lattice);

BuildingSet family_arrangement(const json& f, int max_lattice) {
  if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
    throw input_error("family must be an object with a \"name\" string");
  std::string name = f["name"].get<std::string>();
  if (name == "braid") {
    check_fields(f, {"name", "n"}, "braid family");
    int n = int_from(f["n"], "n");
    return closure(n, braid_generators(n), max_lattice);
  }
  if (name == "boolean") {
    check_fields(f, {"name", "n"}, "boolean family");
    int n = int_from(f["n"], "n");
    return closure(n, boolean_generators(n), max_lattice);
  }
  if (name == "graphic") {
    check_fields(f, {"name", "n", "edges"}, "graphic family");
    int n = int_from(f["n"], "n");
    if (!f["edges"].is_array())
      throw input_error("graphic edges must be a list of vertex pairs");
    std::vector<std::pair<int, int>> edges;
    for (const json& e : f["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw input_error("graphic edge must be a two-element array");
      edges.push_back({int_from(e[0], "edge endpoint"),
                       int_from(e[1], "edge endpoint")});
    }
    return closure(n, graphic_generators(n, edges), max_lattice);
  }
  if (name == "realify") {
    check_fields(f, {"name", "complex_dim", "generators"}, "realify family");
    int d = int_from(f["complex_dim"], "complex_dim");
    if (d < 1) throw input_error("complex_dim must be positive");
    if (!f["generators"].is_array())
      throw input_error("realify generators must be a list");
    std::vector<CMat> gens;
    for (const json& g : f["generators"]) {
      if (!g.is_array() || g.empty())
        throw input_error("each generator must be a nonempty list of rows");
      CMat rows;
      for (const json& r : g) {
        CVec v = complex_row_from(r);
        if (static_cast<int>(v.size()) != d)
          throw input_error("complex row length must equal complex_dim");
        rows.push_back(v);
      }
      gens.push_back(rows);
    }
    std::vector<Subspace> real = realify_generators(d, gens);
    for (const Subspace& s : real)
      if (s.dim() == 0)
        throw input_error("generator spans only the zero subspace");
    return closure(2 * d, real, max_lattice);
  }
  if (name == "product") {
    check_fields(f, {"name", "factors"}, "product family");
    if (!f["factors"].is_array() || f["factors"].size() < 2)
      throw input_error("product requires at least two factors");
    BuildingSet acc = parse_arrangement(f["factors"][0], max_lattice);
    for (size_t i = 1; i < f["factors"].size(); i++)
      acc = arrangement_sum(acc, parse_arrangement(f["factors"][i], max_lattice));
    return acc;
  }
  throw input_error("unknown family \"" + name + "\"");
}

BuildingSet parse_arrangement(const json& j, int max_lattice) {
  if (!j.is_object()) throw input_error("arrangement must be a JSON object");
  if (j.contains("family")) {
    check_fields(j, {"family"}, "arrangement");
    return family_arrangement(j["family"], max_lattice);
  }
  check_fields(j, {"ambient_dim", "generators"}, "arrangement");
  int ambient = int_from(j["ambient_dim"], "ambient_dim");
  if (ambient < 1) throw input_error("ambient_dim must be positive");
  if (!j["generators"].is_array())
    throw input_error("generators must be a list");
  std::vector<Subspace> gens;
  for (const json& g : j["generators"]) gens.push_back(subspace_from(g, ambient));
  return closure(ambient, gens, max_lattice);
}

}  // namespace

BuildingSet load_arrangement(const std::string& text, int max_lattice) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::detail::exception& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_arrangement(j, max_lattice);
}

}  // namespace dcp
