#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"
#include "qwmix/mixing.hpp"

namespace qwmix {

using Partition = std::vector<std::vector<std::size_t>>;

// Partition of the vertex set validated as equitable: inside each cell,
// every vertex has the same complex sum of weights into every other cell.
struct EquitablePartition {
  Partition cells;
  ComplexMatrix s;         // normalized characteristic matrix, S* S = I
  ComplexMatrix row_sums;  // r(j, k): weight from one vertex of cell j into cell k
};

inline void check_partition(std::size_t n, const Partition& cells) {
  std::vector<bool> seen(n, false);
  if (cells.empty()) fail(ErrorCode::BadInput, "partition has no cells");
  for (const auto& cell : cells) {
    if (cell.empty()) fail(ErrorCode::BadInput, "partition has an empty cell");
    for (std::size_t v : cell) {
      if (v >= n) fail(ErrorCode::IndexOutOfRange, "partition names vertex " + std::to_string(v));
      if (seen[v])
        fail(ErrorCode::BadInput, "vertex " + std::to_string(v) + " appears twice");
      seen[v] = true;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) fail(ErrorCode::BadInput, "vertex " + std::to_string(v) + " not covered");
}

inline EquitablePartition verify_equitable(const HermitianMatrix& a,
                                           const Partition& cells,
                                           double tol = 1e-9) {
  const std::size_t n = a.n();
  check_partition(n, cells);
  const std::size_t m = cells.size();
  EquitablePartition ep;
  ep.cells = cells;
  ep.row_sums = ComplexMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      cplx common(0.0, 0.0);
      for (std::size_t idx = 0; idx < cells[j].size(); ++idx) {
        cplx s(0.0, 0.0);
        for (std::size_t w : cells[k]) s += a.at(cells[j][idx], w);
        if (idx == 0) {
          common = s;
        } else if (std::abs(s - common) > tol) {
          fail(ErrorCode::NotEquitable,
               "cell " + std::to_string(j) + " vertex " + std::to_string(cells[j][idx]) +
                   " sees cell " + std::to_string(k) + " differently");
        }
      }
      ep.row_sums.at(j, k) = common;
    }
  ep.s = ComplexMatrix(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = 1.0 / std::sqrt(static_cast<double>(cells[j].size()));
    for (std::size_t v : cells[j]) ep.s.at(v, j) = w;
  }
  return ep;
}

// Quotient matrix B = S* A S. Cross-checked against the closed form
// r(j, k) * sqrt(|cell j| / |cell k|), which also shows B is Hermitian.
inline HermitianMatrix quotient_matrix(const EquitablePartition& ep,
                                       const HermitianMatrix& a) {
  const std::size_t m = ep.cells.size();
  const ComplexMatrix b = ep.s.adjoint() * a.matrix() * ep.s;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      const double ratio = std::sqrt(static_cast<double>(ep.cells[j].size()) /
                                     static_cast<double>(ep.cells[k].size()));
      const cplx closed = ep.row_sums.at(j, k) * ratio;
      if (std::abs(b.at(j, k) - closed) > 1e-9)
        fail(ErrorCode::ClosedFormMismatch,
             "entry (" + std::to_string(j) + ", " + std::to_string(k) +
                 ") differs from the row-sum form by " +
                 std::to_string(std::abs(b.at(j, k) - closed)));
    }
  return hermitize(b, 1e-9);
}

// Residual of the intertwining S* exp(-iAt) S = exp(-iBt) at time t.
inline double quotient_walk_check(const EquitablePartition& ep,
                                  const HermitianMatrix& a, double t) {
  const HermitianMatrix b = quotient_matrix(ep, a);
  const ComplexMatrix lhs = ep.s.adjoint() * evolution(a, t) * ep.s;
  const ComplexMatrix rhs = evolution(b, t);
  return (lhs - rhs).max_abs();
}

// When cells j and k are singletons {u} and {v}, the quotient walk entry
// (j, k) must reproduce the full walk amplitude (u, v) exactly.
inline double singleton_entry_check(const EquitablePartition& ep,
                                    const HermitianMatrix& a, std::size_t j,
                                    std::size_t k, double t) {
  if (j >= ep.cells.size() || k >= ep.cells.size())
    fail(ErrorCode::IndexOutOfRange, "cell index out of range");
  if (ep.cells[j].size() != 1 || ep.cells[k].size() != 1)
    fail(ErrorCode::CellNotSingleton, "both cells must be singletons");
  const std::size_t u = ep.cells[j][0];
  const std::size_t v = ep.cells[k][0];
  const HermitianMatrix b = quotient_matrix(ep, a);
  const cplx quotient_amp = evolution(b, t).at(j, k);
  const cplx full_amp = evolution(a, t).at(u, v);
  return std::abs(quotient_amp - full_amp);
}

// Diagonal unitary conjugation witnessing switching equivalence:
// A2 = D* A1 D entrywise.
struct SwitchingCertificate {
  std::vector<cplx> diag;
  double residual = 0.0;
};

inline HermitianMatrix switch_by(const HermitianMatrix& a, const std::vector<cplx>& d) {
  const std::size_t n = a.n();
  if (d.size() != n) fail(ErrorCode::DimensionMismatch, "diagonal length mismatch");
  for (const cplx& z : d)
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
      fail(ErrorCode::BadInput, "switching diagonal must be unit modulus");
  ComplexMatrix r(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      r.at(u, v) = std::conj(d[u]) * a.at(u, v) * d[v];
  return hermitize(r, 1e-9);
}

// Searches for a switching certificate by propagating phases along a
// spanning forest of the common support and validating every entry. The two
// inputs must already agree entrywise in modulus; inequivalent inputs with
// matching support yield an empty result, not an error.
inline std::optional<SwitchingCertificate> switching_certificate(
    const HermitianMatrix& a1, const HermitianMatrix& a2) {
  const std::size_t n = a1.n();
  if (a2.n() != n) fail(ErrorCode::DimensionMismatch, "orders differ");
  const double support_tol = 1e-9;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (std::abs(std::abs(a1.at(u, v)) - std::abs(a2.at(u, v))) > support_tol)
        fail(ErrorCode::SupportMismatch,
             "moduli differ at (" + std::to_string(u) + ", " + std::to_string(v) + ")");

  std::vector<cplx> d(n, cplx(1.0, 0.0));
  std::vector<bool> fixed(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (fixed[root]) continue;
    fixed[root] = true;
    std::queue<std::size_t> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      const std::size_t u = bfs.front();
      bfs.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (fixed[v] || u == v) continue;
        if (std::abs(a1.at(u, v)) <= support_tol) continue;
        // a2(u, v) = conj(d_u) a1(u, v) d_v determines d_v from d_u.
        cplx dv = a2.at(u, v) * d[u] / a1.at(u, v);
        const double mod = std::abs(dv);
        if (mod == 0.0) continue;
        d[v] = dv / mod;
        fixed[v] = true;
        bfs.push(v);
      }
    }
  }
  double residual = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      residual = std::max(residual,
                          std::abs(std::conj(d[u]) * a1.at(u, v) * d[v] - a2.at(u, v)));
  if (residual > 1e-9) return std::nullopt;
  return SwitchingCertificate{std::move(d), residual};
}

}  // namespace qwmix
