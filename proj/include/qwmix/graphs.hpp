#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"

namespace qwmix {

// Adjacency-style constructors. Unsigned graphs are 0/1 symmetric with zero
// diagonal; signed variants carry unit-modulus complex weights and stay
// exactly conjugate-symmetric in storage so hermitize applies a zero
// correction.

inline void require_order(std::size_t n, std::size_t min_n, const char* who) {
  if (n < min_n)
    fail(ErrorCode::TooSmall,
         std::string(who) + " needs order >= " + std::to_string(min_n));
}

constexpr std::size_t kOrderCap = 4096;

inline void require_cap(std::size_t n, const char* who) {
  if (n > kOrderCap)
    fail(ErrorCode::SizeCap, std::string(who) + " order " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(kOrderCap));
}

inline HermitianMatrix complete(std::size_t n) {
  require_order(n, 1, "complete");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a.at(i, j) = 1.0;
  return hermitize(a);
}

inline HermitianMatrix empty_graph(std::size_t n) {
  require_order(n, 1, "empty_graph");
  return hermitize(ComplexMatrix::zeros(n));
}

inline HermitianMatrix path(std::size_t n) {
  require_order(n, 1, "path");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a.at(i, i + 1) = 1.0;
    a.at(i + 1, i) = 1.0;
  }
  return hermitize(a);
}

inline HermitianMatrix cycle(std::size_t n) {
  require_order(n, 3, "cycle");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    a.at(i, j) = 1.0;
    a.at(j, i) = 1.0;
  }
  return hermitize(a);
}

inline bool is_simple_adjacency(const HermitianMatrix& a, double tol = 1e-12) {
  for (std::size_t i = 0; i < a.n(); ++i) {
    if (std::abs(a.at(i, i)) > tol) return false;
    for (std::size_t j = 0; j < a.n(); ++j) {
      if (i == j) continue;
      const cplx z = a.at(i, j);
      if (std::abs(z.imag()) > tol) return false;
      if (std::abs(z.real()) > tol && std::abs(z.real() - 1.0) > tol) return false;
    }
  }
  return true;
}

inline HermitianMatrix complement_of(const HermitianMatrix& a) {
  if (!is_simple_adjacency(a))
    fail(ErrorCode::NotSimpleGraph, "complement needs a 0/1 zero-diagonal matrix");
  const std::size_t n = a.n();
  ComplexMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) c.at(i, j) = (std::abs(a.at(i, j).real()) > 0.5) ? 0.0 : 1.0;
  return hermitize(c);
}

// Disjoint union plus all cross edges with weight one.
inline HermitianMatrix join(const HermitianMatrix& a, const HermitianMatrix& b) {
  const std::size_t na = a.n(), nb = b.n();
  ComplexMatrix j(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < na; ++k) j.at(i, k) = a.at(i, k);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t k = 0; k < nb; ++k) j.at(na + i, na + k) = b.at(i, k);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      j.at(i, na + k) = 1.0;
      j.at(na + k, i) = 1.0;
    }
  return hermitize(j);
}

inline HermitianMatrix claw(std::size_t leaves) {
  require_order(leaves, 1, "claw");
  return join(empty_graph(1), empty_graph(leaves));
}

// The base of a cone must annihilate the all-ones vector and, unless it is
// identically zero, its zero eigenvalue must be simple. The identically zero
// base is the star construction and needs no simplicity.
inline void check_cone_base(const HermitianMatrix& base) {
  const std::size_t n = base.n();
  require_order(n, 1, "cone base");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) s += base.at(i, j);
    worst = std::max(worst, std::abs(s));
  }
  if (worst > 1e-9)
    fail(ErrorCode::AllOnesNotKernel,
         "row sum deviation " + std::to_string(worst));
  if (base.max_abs() == 0.0) return;
  const SpectralDecomposition sd = eigh(base);
  const double group_tol = 1e-8 * std::max(1.0, sd.source_norm);
  for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r) {
    if (std::abs(sd.eigenvalues[r]) <= group_tol) {
      if (sd.multiplicities[r] != 1)
        fail(ErrorCode::ZeroNotSimple, "zero eigenvalue has multiplicity " +
                                           std::to_string(sd.multiplicities[r]));
      return;
    }
  }
  fail(ErrorCode::ZeroNotSimple, "base has no zero eigenvalue");
}

// New apex vertex 0 joined to every base vertex. With scaled set, every
// entry is divided by the base order, which multiplies walk times by n.
inline HermitianMatrix cone_over(const HermitianMatrix& base, bool scaled = false) {
  check_cone_base(base);
  const std::size_t n = base.n();
  ComplexMatrix c(n + 1, n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    c.at(0, j + 1) = 1.0;
    c.at(j + 1, 0) = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.at(i + 1, j + 1) = base.at(i, j);
  if (scaled) {
    const double inv = 1.0 / static_cast<double>(n);
    ComplexMatrix s(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) s.at(i, j) = inv * c.at(i, j);
    return hermitize(s);
  }
  return hermitize(c);
}

inline ComplexMatrix cartesian_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.square() || !b.square())
    fail(ErrorCode::NotSquare, "cartesian product needs square factors");
  require_cap(a.rows() * b.rows(), "cartesian_product");
  return kron(a, ComplexMatrix::identity(b.rows())) +
         kron(ComplexMatrix::identity(a.rows()), b);
}

inline HermitianMatrix cartesian_product(const HermitianMatrix& a,
                                         const HermitianMatrix& b) {
  return hermitize(cartesian_product(a.matrix(), b.matrix()));
}

// Hermitian circulant from its first row. The row is canonicalized to exact
// conjugate symmetry before the matrix is laid out, so storage is exactly
// Hermitian.
inline HermitianMatrix circulant(std::vector<cplx> row) {
  const std::size_t n = row.size();
  require_order(n, 1, "circulant");
  require_cap(n, "circulant");
  if (std::abs(row[0].imag()) > 1e-12)
    fail(ErrorCode::NotHermitianCirculant, "leading entry must be real");
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs(row[k] - std::conj(row[n - k])) > 1e-12)
      fail(ErrorCode::NotHermitianCirculant,
           "entry " + std::to_string(k) + " is not the conjugate of entry " +
               std::to_string(n - k));
  row[0] = cplx(row[0].real(), 0.0);
  for (std::size_t k = 1; 2 * k < n; ++k) {
    const cplx v = (row[k] + std::conj(row[n - k])) / 2.0;
    row[k] = v;
    row[n - k] = std::conj(v);
  }
  if (n % 2 == 0 && n >= 2) row[n / 2] = cplx(row[n / 2].real(), 0.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = row[(j + n - i) % n];
  return hermitize(a);
}

// Circulant-like matrix where wrap-around entries pick up a minus sign:
// entry (i, j) is a[j - i] above the diagonal and -a[n + j - i] below it.
inline ComplexMatrix skew_circulant(const std::vector<cplx>& row) {
  const std::size_t n = row.size();
  require_order(n, 1, "skew_circulant");
  require_cap(n, "skew_circulant");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = (j >= i) ? row[j - i] : -row[n + j - i];
  return a;
}

// Odd-order complete graph signed with alternating +-i around each row:
// first row (0, -i, +i, -i, ..., +i). Rows sum to zero and the kernel is
// one dimensional.
inline HermitianMatrix odd_clique_signing(std::size_t n) {
  if (n < 3 || n % 2 == 0)
    fail(ErrorCode::NotOdd, "order must be odd and >= 3, got " + std::to_string(n));
  std::vector<cplx> row(n, cplx(0.0, 0.0));
  for (std::size_t k = 1; k < n; ++k) row[k] = (k % 2 == 1) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  HermitianMatrix a = circulant(row);
  const SpectralDecomposition sd = eigh(a);
  const double group_tol = 1e-8 * std::max(1.0, sd.source_norm);
  for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r)
    if (std::abs(sd.eigenvalues[r]) <= group_tol && sd.multiplicities[r] != 1)
      fail(ErrorCode::ConstructionCheckFailed, "zero eigenvalue not simple");
  return a;
}

// Even-order complete graph signed with 2m+1 roots of unity, n = 2m + 2.
// Vertices pair into m+1 blocks of two; the block at offset d >= 1 is
// [[w^{2d-1}, w^{2d}], [w^{2d}, w^{2d-1}]] and the diagonal block swaps the
// pair with weight one. Every row sees each root exactly once, so rows sum
// to zero.
inline HermitianMatrix even_clique_signing(std::size_t n) {
  if (n < 4 || n % 2 == 1)
    fail(ErrorCode::NotEven, "order must be even and >= 4, got " + std::to_string(n));
  const std::size_t m = (n - 2) / 2;
  const std::size_t q = 2 * m + 1;
  std::vector<cplx> pw(q);
  for (std::size_t p = 0; p < q; ++p) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
    pw[p] = cplx(std::cos(ang), std::sin(ang));
  }
  ComplexMatrix a(n, n);
  for (std::size_t bj = 0; bj <= m; ++bj) {
    a.at(2 * bj, 2 * bj + 1) = 1.0;
    a.at(2 * bj + 1, 2 * bj) = 1.0;
    for (std::size_t bk = bj + 1; bk <= m; ++bk) {
      const std::size_t d = bk - bj;
      const cplx odd = pw[2 * d - 1];
      const cplx even = pw[2 * d % q];
      a.at(2 * bj, 2 * bk) = odd;
      a.at(2 * bj, 2 * bk + 1) = even;
      a.at(2 * bj + 1, 2 * bk) = even;
      a.at(2 * bj + 1, 2 * bk + 1) = odd;
      a.at(2 * bk, 2 * bj) = std::conj(odd);
      a.at(2 * bk + 1, 2 * bj) = std::conj(even);
      a.at(2 * bk, 2 * bj + 1) = std::conj(even);
      a.at(2 * bk + 1, 2 * bj + 1) = std::conj(odd);
    }
  }
  // The reflected lower blocks must coincide with the direct formula
  // [[w^{2k}, w^{2k-1}], [w^{2k-1}, w^{2k}]] at offset k = m - d + 1.
  for (std::size_t bj = 0; bj <= m; ++bj)
    for (std::size_t bk = 0; bk < bj; ++bk) {
      const std::size_t k = m - (bj - bk) + 1;
      const cplx lead = pw[2 * k % q];
      const cplx trail = pw[(2 * k - 1) % q];
      const double dev = std::max(
          std::max(std::abs(a.at(2 * bj, 2 * bk) - lead),
                   std::abs(a.at(2 * bj + 1, 2 * bk + 1) - lead)),
          std::max(std::abs(a.at(2 * bj, 2 * bk + 1) - trail),
                   std::abs(a.at(2 * bj + 1, 2 * bk) - trail)));
      if (dev > 1e-12)
        fail(ErrorCode::ConstructionCheckFailed,
             "block reflection deviates by " + std::to_string(dev));
    }
  HermitianMatrix h = hermitize(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) s += h.at(i, j);
    worst = std::max(worst, std::abs(s));
  }
  if (worst > 1e-9)
    fail(ErrorCode::ConstructionCheckFailed, "row sums deviate by " + std::to_string(worst));
  const SpectralDecomposition sd = eigh(h);
  const double group_tol = 1e-8 * std::max(1.0, sd.source_norm);
  for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r)
    if (std::abs(sd.eigenvalues[r]) <= group_tol && sd.multiplicities[r] != 1)
      fail(ErrorCode::ConstructionCheckFailed, "zero eigenvalue not simple");
  return h;
}

// Fully oriented K4: every edge carries -i in the direction of a fixed
// doubly regular orientation. Switching-equivalent to the cone over the
// oriented triangle, which is what makes its walk mix uniformly.
inline HermitianMatrix k4_chiral_signing() {
  const cplx mi(0.0, -1.0), pi_(0.0, 1.0);
  ComplexMatrix a(4, 4);
  const cplx rows[4][4] = {{0.0, mi, mi, mi},
                           {pi_, 0.0, mi, pi_},
                           {pi_, pi_, 0.0, mi},
                           {pi_, mi, pi_, 0.0}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = rows[i][j];
  return hermitize(a);
}

inline HermitianMatrix oriented_cycle(std::size_t n) {
  require_order(n, 3, "oriented_cycle");
  std::vector<cplx> row(n, cplx(0.0, 0.0));
  row[1] = cplx(0.0, -1.0);
  row[n - 1] = cplx(0.0, 1.0);
  return circulant(row);
}

// Transitive tournament: -i on every edge pointing from lower to higher
// index. The spectrum is {cot((2j+1) pi / 2n)} and the construction checks
// itself against it.
inline HermitianMatrix transitive_tournament(std::size_t n) {
  require_order(n, 2, "transitive_tournament");
  require_cap(n, "transitive_tournament");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a.at(i, j) = cplx(0.0, -1.0);
      a.at(j, i) = cplx(0.0, 1.0);
    }
  HermitianMatrix h = hermitize(a);
  const SpectralDecomposition sd = eigh(h);
  std::vector<double> got;
  for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r)
    got.insert(got.end(), sd.multiplicities[r], sd.eigenvalues[r]);
  std::vector<double> want(n);
  for (std::size_t j = 0; j < n; ++j)
    want[j] = 1.0 / std::tan((2.0 * static_cast<double>(j) + 1.0) * std::numbers::pi /
                             (2.0 * static_cast<double>(n)));
  std::sort(want.begin(), want.end());
  const double tol = 1e-8 * std::max(1.0, sd.source_norm);
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(got[j] - want[j]) > tol)
      fail(ErrorCode::SpectrumMismatch,
           "eigenvalue " + std::to_string(got[j]) + " expected " + std::to_string(want[j]));
  return h;
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline void check_edges(std::size_t n, const EdgeList& edges, const char* who) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      fail(ErrorCode::IndexOutOfRange, std::string(who) + " edge endpoint out of range");
    if (u == v) fail(ErrorCode::BadInput, std::string(who) + " rejects self loops");
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      fail(ErrorCode::BadInput, std::string(who) + " rejects parallel edges");
  }
}

inline HermitianMatrix adjacency_from_edges(std::size_t n, const EdgeList& edges) {
  require_order(n, 1, "adjacency_from_edges");
  require_cap(n, "adjacency_from_edges");
  check_edges(n, edges, "adjacency_from_edges");
  ComplexMatrix a(n, n);
  for (const auto& [u, v] : edges) {
    a.at(u, v) = 1.0;
    a.at(v, u) = 1.0;
  }
  return hermitize(a);
}

// Orients each edge along an Eulerian circuit, giving every vertex equal
// in- and out-degree, then signs traversal direction with -i. Rows of the
// result sum to zero.
inline HermitianMatrix eulerian_orientation_signing(std::size_t n, const EdgeList& edges) {
  require_order(n, 1, "eulerian_orientation_signing");
  require_cap(n, "eulerian_orientation_signing");
  check_edges(n, edges, "eulerian_orientation_signing");

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].push_back({edges[e].second, e});
    adj[edges[e].second].push_back({edges[e].first, e});
  }
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() % 2 != 0)
      fail(ErrorCode::NotEulerian, "vertex " + std::to_string(v) + " has odd degree");

  if (n > 1) {
    std::vector<bool> reached(n, false);
    std::queue<std::size_t> bfs;
    bfs.push(0);
    reached[0] = true;
    std::size_t count = 1;
    while (!bfs.empty()) {
      const std::size_t v = bfs.front();
      bfs.pop();
      for (const auto& [u, e] : adj[v])
        if (!reached[u]) {
          reached[u] = true;
          ++count;
          bfs.push(u);
        }
    }
    if (count != n) fail(ErrorCode::Disconnected, "not all vertices reachable");
  }

  ComplexMatrix a(n, n);
  if (!edges.empty()) {
    std::vector<bool> used(edges.size(), false);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<std::size_t> stack{edges[0].first};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      bool advanced = false;
      while (cursor[v] < adj[v].size()) {
        const auto [u, e] = adj[v][cursor[v]++];
        if (used[e]) continue;
        used[e] = true;
        a.at(v, u) = cplx(0.0, -1.0);
        a.at(u, v) = cplx(0.0, 1.0);
        stack.push_back(u);
        advanced = true;
        break;
      }
      if (!advanced) stack.pop_back();
    }
  }
  HermitianMatrix h = hermitize(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) s += h.at(i, j);
    worst = std::max(worst, std::abs(s));
  }
  if (worst > 1e-9)
    fail(ErrorCode::ConstructionCheckFailed, "orientation rows sum to " + std::to_string(worst));
  return h;
}

inline HermitianMatrix laplacian(const HermitianMatrix& a) {
  if (!is_simple_adjacency(a))
    fail(ErrorCode::NotSimpleGraph, "laplacian needs a 0/1 zero-diagonal matrix");
  const std::size_t n = a.n();
  ComplexMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) deg += a.at(i, j).real();
    l.at(i, i) = deg;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) l.at(i, j) = -a.at(i, j);
  }
  return hermitize(l);
}

// Cayley graph of the group given by its multiplication table (table[a][b]
// is a composed with b) over an inverse-closed connection set avoiding the
// identity: g ~ h iff h g^{-1} lies in the connection set.
inline HermitianMatrix cayley_graph(const std::vector<std::vector<std::size_t>>& table,
                                    const std::vector<std::size_t>& connection) {
  const std::size_t n = table.size();
  require_order(n, 1, "cayley_graph");
  require_cap(n, "cayley_graph");
  for (const auto& row : table) {
    if (row.size() != n) fail(ErrorCode::InvalidGroupTable, "table is not square");
    for (std::size_t x : row)
      if (x >= n) fail(ErrorCode::InvalidGroupTable, "table entry out of range");
  }
  std::size_t identity = n;
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b)
      ok = table[e][b] == b && table[b][e] == b;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity == n) fail(ErrorCode::InvalidGroupTable, "no identity element");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h)
      if (table[g][h] == identity && table[h][g] == identity) {
        inv[g] = h;
        break;
      }
    if (inv[g] == n)
      fail(ErrorCode::InvalidGroupTable, "element " + std::to_string(g) + " has no inverse");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]])
          fail(ErrorCode::InvalidGroupTable, "associativity fails");

  std::set<std::size_t> conn;
  for (std::size_t s : connection) {
    if (s >= n) fail(ErrorCode::IndexOutOfRange, "connection element out of range");
    if (s == identity)
      fail(ErrorCode::ConnectionContainsIdentity, "connection contains the identity");
    if (!conn.insert(s).second) fail(ErrorCode::BadInput, "duplicate connection element");
  }
  for (std::size_t s : conn)
    if (!conn.count(inv[s]))
      fail(ErrorCode::ConnectionNotInverseClosed,
           "inverse of " + std::to_string(s) + " missing from connection");

  ComplexMatrix a(n, n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (conn.count(table[h][inv[g]])) a.at(g, h) = 1.0;
  return hermitize(a);
}

// Cartesian power of the complete graph on d vertices; with chiral set and
// d = 4, the factor is the chiral K4 signing instead.
inline HermitianMatrix hamming(std::size_t copies, std::size_t d, bool chiral = false) {
  require_order(copies, 1, "hamming");
  require_order(d, 1, "hamming alphabet");
  if (chiral && d != 4)
    fail(ErrorCode::SigningRequiresD4, "chiral factor exists only for d = 4");
  std::size_t order = 1;
  for (std::size_t i = 0; i < copies; ++i) {
    order *= d;
    require_cap(order, "hamming");
  }
  const HermitianMatrix factor = chiral ? k4_chiral_signing() : complete(d);
  HermitianMatrix acc = factor;
  for (std::size_t i = 1; i < copies; ++i) acc = cartesian_product(acc, factor);
  return acc;
}

// Declarative graph description, the JSON-facing surface of the builders.
struct GraphSpec {
  std::string kind;          // complete, empty, path, cycle, claw, explicit,
                             // circulant, skew_circulant, cayley, hamming
  std::size_t n = 0;
  std::size_t d = 0;         // hamming alphabet size
  std::size_t power = 1;     // cartesian power applied to the built factor
  std::string signing;       // "", none, odd, even, chiral, tournament,
                             // oriented, eulerian
  std::vector<cplx> first_row;
  EdgeList edges;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> connection;
  bool cone = false;    // wrap the built graph in a cone (new apex vertex 0)
  bool scaled = false;  // with cone: divide all cone entries by the base order
};

inline ComplexMatrix build_graph(const GraphSpec& spec) {
  const std::string& s = spec.signing;
  const bool unsigned_graph = s.empty() || s == "none";
  ComplexMatrix base;
  if (spec.kind == "complete") {
    if (unsigned_graph)
      base = complete(spec.n).matrix();
    else if (s == "odd")
      base = odd_clique_signing(spec.n).matrix();
    else if (s == "even")
      base = even_clique_signing(spec.n).matrix();
    else if (s == "chiral") {
      if (spec.n != 4) fail(ErrorCode::SigningRequiresD4, "chiral signing needs n = 4");
      base = k4_chiral_signing().matrix();
    } else if (s == "tournament")
      base = transitive_tournament(spec.n).matrix();
    else
      fail(ErrorCode::BadInput, "unknown signing '" + s + "' for complete");
  } else if (spec.kind == "empty") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "empty graph takes no signing");
    base = empty_graph(spec.n).matrix();
  } else if (spec.kind == "path") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "path takes no signing");
    base = path(spec.n).matrix();
  } else if (spec.kind == "cycle") {
    if (unsigned_graph)
      base = cycle(spec.n).matrix();
    else if (s == "oriented")
      base = oriented_cycle(spec.n).matrix();
    else
      fail(ErrorCode::BadInput, "unknown signing '" + s + "' for cycle");
  } else if (spec.kind == "claw") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "claw takes no signing");
    base = claw(spec.n).matrix();
  } else if (spec.kind == "explicit") {
    if (unsigned_graph)
      base = adjacency_from_edges(spec.n, spec.edges).matrix();
    else if (s == "eulerian")
      base = eulerian_orientation_signing(spec.n, spec.edges).matrix();
    else
      fail(ErrorCode::BadInput, "unknown signing '" + s + "' for explicit");
  } else if (spec.kind == "circulant") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "circulant takes no signing");
    base = circulant(spec.first_row).matrix();
  } else if (spec.kind == "skew_circulant") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "skew_circulant takes no signing");
    base = skew_circulant(spec.first_row);
  } else if (spec.kind == "cayley") {
    if (!unsigned_graph) fail(ErrorCode::BadInput, "cayley takes no signing");
    base = cayley_graph(spec.table, spec.connection).matrix();
  } else if (spec.kind == "hamming") {
    if (unsigned_graph)
      base = hamming(spec.n, spec.d, false).matrix();
    else if (s == "chiral")
      base = hamming(spec.n, spec.d, true).matrix();
    else
      fail(ErrorCode::BadInput, "unknown signing '" + s + "' for hamming");
  } else {
    fail(ErrorCode::BadInput, "unknown graph kind '" + spec.kind + "'");
  }
  if (spec.power < 1) fail(ErrorCode::BadInput, "power must be >= 1");
  if (spec.scaled && !spec.cone) fail(ErrorCode::BadInput, "'scaled' requires 'cone'");
  ComplexMatrix acc = base;
  for (std::size_t i = 1; i < spec.power; ++i) acc = cartesian_product(acc, base);
  if (spec.cone) acc = cone_over(hermitize(acc), spec.scaled).matrix();
  return acc;
}

}  // namespace qwmix
