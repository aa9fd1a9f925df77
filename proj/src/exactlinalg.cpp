#include "dcp/exactlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace dcp {

std::string rat_str(const Rat& x) { return x.get_str(); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, bool sign_ok) {
    if (t.empty()) return false;
    size_t i = sign_ok && (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); i++)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false))
    throw input_error("bad rational literal: " + s);
  Rat x(num + "/" + den);
  if (x.get_den() == 0) throw input_error("zero denominator: " + s);
  x.canonicalize();
  return x;
}

int rref(Mat& m) {
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < m.size(); col++) {
    size_t sel = rank;
    while (sel < m.size() && m[sel][col] == 0) sel++;
    if (sel == m.size()) continue;
    std::swap(m[rank], m[sel]);
    Rat inv = m[rank][col];
    for (auto& x : m[rank]) x /= inv;
    for (size_t i = 0; i < m.size(); i++) {
      if (i == rank || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < cols; j++) m[i][j] -= f * m[rank][j];
    }
    rank++;
  }
  m.resize(rank);
  return static_cast<int>(rank);
}

Subspace Subspace::span(int ambient, Mat vectors) {
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != ambient)
      throw input_error("vector length does not match ambient dimension");
  Subspace s;
  s.ambient_ = ambient;
  rref(vectors);
  s.rows_ = std::move(vectors);
  return s;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(int ambient) {
  Mat id(ambient, Vec(ambient, 0));
  for (int i = 0; i < ambient; i++) id[i][i] = 1;
  return span(ambient, std::move(id));
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw input_error("vector length does not match ambient dimension");
  Vec r = v;
  for (const auto& row : rows_) {
    size_t p = 0;
    while (p < row.size() && row[p] == 0) p++;
    if (p == row.size()) continue;
    if (r[p] == 0) continue;
    Rat f = r[p];
    for (size_t j = 0; j < r.size(); j++) r[j] -= f * row[j];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw input_error("ambient dimension mismatch");
  if (other.dim() > dim()) return false;
  for (const auto& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

const std::string& Subspace::key() const {
  if (key_.empty()) {
    std::ostringstream os;
    os << ambient_ << ':';
    for (const auto& row : rows_) {
      for (const auto& x : row) os << rat_str(x) << ',';
      os << ';';
    }
    key_ = os.str();
  }
  return key_;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && rows_ == o.rows_;
}

bool Subspace::operator<(const Subspace& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  return key() < o.key();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw input_error("ambient dimension mismatch");
  Mat rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::span(a.ambient(), std::move(rows));
}

Subspace annihilator(const Subspace& s) {
  int n = s.ambient();
  const Mat& rows = s.rows();
  std::vector<int> pivots;
  std::vector<bool> is_pivot(n, false);
  for (const auto& row : rows) {
    int p = 0;
    while (p < n && row[p] == 0) p++;
    pivots.push_back(p);
    is_pivot[p] = true;
  }
  Mat basis;
  for (int c = 0; c < n; c++) {
    if (is_pivot[c]) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (size_t i = 0; i < rows.size(); i++) v[pivots[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, std::move(basis));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw input_error("ambient dimension mismatch");
  return annihilator(sum(annihilator(a), annihilator(b)));
}

bool is_direct(const std::vector<Subspace>& parts) {
  if (parts.empty()) return true;
  Subspace total = Subspace::zero(parts[0].ambient());
  int dims = 0;
  for (const auto& p : parts) {
    total = sum(total, p);
    dims += p.dim();
  }
  return total.dim() == dims;
}

Vec DualMap::apply(const Vec& phi) const {
  if (static_cast<int>(phi.size()) != dom)
    throw input_error("functional length does not match map domain");
  Vec out(cod, 0);
  for (int i = 0; i < dom; i++) {
    if (phi[i] == 0) continue;
    for (int j = 0; j < cod; j++) out[j] += phi[i] * mat[i][j];
  }
  return out;
}

DualMap compose(const DualMap& a, const DualMap& b) {
  if (a.cod != b.dom) throw input_error("map composition dimension mismatch");
  DualMap r;
  r.dom = a.dom;
  r.cod = b.cod;
  r.mat.assign(a.dom, Vec(b.cod, 0));
  for (int i = 0; i < a.dom; i++)
    for (int k = 0; k < a.cod; k++) {
      if (a.mat[i][k] == 0) continue;
      for (int j = 0; j < b.cod; j++) r.mat[i][j] += a.mat[i][k] * b.mat[k][j];
    }
  return r;
}

Subspace pullback(const DualMap& f, const Subspace& g) {
  if (g.ambient() != f.dom) throw input_error("pullback ambient mismatch");
  Mat rows;
  for (const auto& r : g.rows()) rows.push_back(f.apply(r));
  return Subspace::span(f.cod, std::move(rows));
}

Subspace kernel_dual(const DualMap& f) {
  Mat cols;
  for (int j = 0; j < f.cod; j++) {
    Vec c(f.dom);
    for (int i = 0; i < f.dom; i++) c[i] = f.mat[i][j];
    cols.push_back(std::move(c));
  }
  return annihilator(Subspace::span(f.dom, std::move(cols)));
}

long int_rank(const IntMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  Mat q(m.size(), Vec(m[0].size()));
  for (size_t i = 0; i < m.size(); i++)
    for (size_t j = 0; j < m[0].size(); j++) q[i][j] = m[i][j];
  return rref(q);
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty() || b.empty()) return {};
  size_t r = a.size(), k = a[0].size(), c = b[0].size();
  if (k != b.size()) throw internal_error("matrix product shape mismatch");
  IntMatrix out(r, std::vector<Int>(c, 0));
  for (size_t i = 0; i < r; i++)
    for (size_t t = 0; t < k; t++) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; j++) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

bool int_is_zero(const IntMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

IntMatrix int_transpose(const IntMatrix& m) {
  if (m.empty() || m[0].empty()) return {};
  IntMatrix out(m[0].size(), std::vector<Int>(m.size()));
  for (size_t i = 0; i < m.size(); i++)
    for (size_t j = 0; j < m[0].size(); j++) out[j][i] = m[i][j];
  return out;
}

IntMatrix int_scale(const IntMatrix& m, const Int& c) {
  IntMatrix out = m;
  for (auto& row : out)
    for (auto& x : row) x *= c;
  return out;
}

SNFResult smith_normal_form(IntMatrix m) {
  SNFResult res;
  if (m.empty() || m[0].empty()) return res;
  size_t R = m.size(), C = m[0].size();
  size_t t = 0;
  while (t < R && t < C) {
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < R; i++)
      for (size_t j = t; j < C; j++) {
        if (m[i][j] == 0) continue;
        if (!found || mpz_cmpabs(m[i][j].get_mpz_t(), m[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    std::swap(m[t], m[pi]);
    if (pj != t)
      for (size_t i = 0; i < R; i++) std::swap(m[i][t], m[i][pj]);
    bool settled = false;
    while (!settled) {
      settled = true;
      for (size_t i = t + 1; i < R && settled; i++) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        if (q != 0)
          for (size_t j = t; j < C; j++) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          settled = false;
        }
      }
      if (!settled) continue;
      for (size_t j = t + 1; j < C && settled; j++) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        if (q != 0)
          for (size_t i = t; i < R; i++) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (size_t i = 0; i < R; i++) std::swap(m[i][t], m[i][j]);
          settled = false;
        }
      }
      if (!settled) continue;
      for (size_t i = t + 1; i < R && settled; i++)
        for (size_t j = t + 1; j < C && settled; j++)
          if (m[i][j] % m[t][t] != 0) {
            for (size_t jj = t; jj < C; jj++) m[t][jj] += m[i][jj];
            settled = false;
          }
    }
    t++;
  }
  for (size_t i = 0; i < t; i++) res.factors.push_back(abs(m[i][i]));
  return res;
}

std::string HomologyGroup::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

HomologyGroup homology_at(const IntMatrix& out, const IntMatrix& in, long dim_here) {
  HomologyGroup h;
  long rank_out = int_rank(out);
  SNFResult s = smith_normal_form(in);
  h.rank = dim_here - rank_out - s.rank();
  if (h.rank < 0) throw internal_error("negative homology rank: boundary maps inconsistent");
  for (const auto& f : s.factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

long ChainComplex::dim_at(long k) const {
  if (k < min_deg || k > max_deg()) return 0;
  return dims[k - min_deg];
}

const IntMatrix& ChainComplex::d_at(long k) const {
  static const IntMatrix empty;
  if (k <= min_deg || k > max_deg()) return empty;
  return d[k - min_deg];
}

void ChainComplex::validate() const {
  if (dims.empty()) return;
  if (d.size() != dims.size()) throw internal_error("chain complex: boundary count mismatch");
  if (!d[0].empty()) throw internal_error("chain complex: lowest boundary must be zero");
  for (size_t i = 1; i < dims.size(); i++) {
    if (dims[i] == 0 || dims[i - 1] == 0) {
      if (!d[i].empty()) throw internal_error("chain complex: expected empty boundary");
      continue;
    }
    if (static_cast<long>(d[i].size()) != dims[i - 1])
      throw internal_error("chain complex: boundary row count mismatch");
    for (const auto& row : d[i])
      if (static_cast<long>(row.size()) != dims[i])
        throw internal_error("chain complex: boundary column count mismatch");
  }
  for (size_t i = 2; i < dims.size(); i++) {
    if (d[i].empty() || d[i - 1].empty()) continue;
    if (!int_is_zero(int_mul(d[i - 1], d[i])))
      throw internal_error("chain complex: d o d != 0");
  }
}

HomologyGroup ChainComplex::homology(long k) const {
  if (k < min_deg || k > max_deg()) return {};
  return homology_at(d_at(k), d_at(k + 1), dim_at(k));
}

std::map<long, HomologyGroup> ChainComplex::homology_all() const {
  std::map<long, HomologyGroup> out;
  for (long k = min_deg; k <= max_deg(); k++) out[k] = homology(k);
  return out;
}

std::map<long, HomologyGroup> complex_homology(const ChainComplex& c) {
  c.validate();
  return c.homology_all();
}

namespace {

// Invariant-factor chain of a finite abelian group given as any factor list.
std::vector<Int> canonical_chain(std::vector<Int> factors) {
  std::map<Int, std::vector<int>> primes;  // prime -> exponents, one per factor
  for (auto f : factors) {
    if (f < 0) f = -f;
    if (f <= 1) continue;
    Int n = f;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
      if (n % p != 0) continue;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        e++;
      }
      primes[p].push_back(e);
    }
    if (n > 1) primes[n].push_back(1);
  }
  size_t chain_len = 0;
  for (auto& [p, es] : primes) {
    std::sort(es.begin(), es.end(), std::greater<int>());
    chain_len = std::max(chain_len, es.size());
  }
  std::vector<Int> chain(chain_len, 1);
  for (const auto& [p, es] : primes)
    for (size_t i = 0; i < es.size(); i++) {
      Int pe = 1;
      for (int e = 0; e < es[i]; e++) pe *= p;
      chain[chain_len - 1 - i] *= pe;
    }
  return chain;
}

}  // namespace

void add_group(std::map<long, HomologyGroup>& acc, long deg, const HomologyGroup& g) {
  if (g.trivial()) {
    acc.try_emplace(deg);
    return;
  }
  HomologyGroup& dst = acc[deg];
  dst.rank += g.rank;
  if (!g.torsion.empty()) {
    dst.torsion.insert(dst.torsion.end(), g.torsion.begin(), g.torsion.end());
    dst.torsion = canonical_chain(std::move(dst.torsion));
  }
}

}  // namespace dcp
