#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/error.hpp"

namespace qwmix {

// Spectral decomposition A = sum_r lambda_r E_r with strictly increasing
// eigenvalues and orthogonal idempotent projectors summing to the identity.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::size_t> multiplicities;
  std::vector<ComplexMatrix> projectors;
  double source_norm = 0.0;

  std::size_t order() const {
    return projectors.empty() ? 0 : projectors.front().rows();
  }
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

// One two-sided rotation U = [[c, -conj(s)], [s, c]] on the (p, q) plane,
// chosen to annihilate a_pq. Phase convention: s = sigma * e^{-i phi} where
// a_pq = b e^{i phi}, which reduces to the classical real Jacobi rotation
// when a_pq is real positive.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                          std::size_t q) {
  const cplx apq = a.at(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const double alpha = a.at(p, p).real();
  const double gamma = a.at(q, q).real();
  const double tau = (gamma - alpha) / (2.0 * b);
  // Small root of t^2 - 2 tau t - 1 = 0; the annihilation condition for this
  // phase convention, opposite in sign to the textbook real-symmetric form.
  const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double sigma = t * c;
  const cplx phase = apq / b;
  const cplx s = sigma * std::conj(phase);

  const std::size_t n = a.rows();
  // Column update A <- A U.
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a.at(k, p);
    const cplx akq = a.at(k, q);
    a.at(k, p) = akp * c + akq * s;
    a.at(k, q) = -akp * std::conj(s) + akq * c;
  }
  // Row update A <- U* A.
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a.at(p, k);
    const cplx aqk = a.at(q, k);
    a.at(p, k) = apk * c + aqk * std::conj(s);
    a.at(q, k) = -apk * s + aqk * c;
  }
  // The rotation annihilates the pivot pair exactly in exact arithmetic;
  // clear the rounding residue so convergence is monotone.
  a.at(p, q) = 0.0;
  a.at(q, p) = 0.0;
  a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
  a.at(q, q) = cplx(a.at(q, q).real(), 0.0);
  // Accumulate V <- V U.
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v.at(k, p);
    const cplx vkq = v.at(k, q);
    v.at(k, p) = vkp * c + vkq * s;
    v.at(k, q) = -vkp * std::conj(s) + vkq * c;
  }
}

// Modified Gram-Schmidt on the listed columns of V, in place.
inline void orthonormalize_columns(ComplexMatrix& v, const std::vector<std::size_t>& cols) {
  const std::size_t n = v.rows();
  for (std::size_t a = 0; a < cols.size(); ++a) {
    const std::size_t ca = cols[a];
    for (std::size_t b = 0; b < a; ++b) {
      const std::size_t cb = cols[b];
      cplx proj(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) proj += std::conj(v.at(k, cb)) * v.at(k, ca);
      for (std::size_t k = 0; k < n; ++k) v.at(k, ca) -= proj * v.at(k, cb);
    }
    double nrm = 0.0;
    for (std::size_t k = 0; k < n; ++k) nrm += std::norm(v.at(k, ca));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12)
      fail(ErrorCode::ConvergenceFailure, "degenerate eigenvector during orthonormalization");
    for (std::size_t k = 0; k < n; ++k) v.at(k, ca) /= nrm;
  }
}

inline void validate_decomposition(const SpectralDecomposition& sd,
                                   const HermitianMatrix& a) {
  const std::size_t n = a.n();
  const double scale = std::max(1.0, sd.source_norm);
  const double bound = 1e-9 * scale;

  std::size_t total_mult = 0;
  for (std::size_t m : sd.multiplicities) total_mult += m;
  if (total_mult != n || sd.eigenvalues.size() != sd.projectors.size() ||
      sd.eigenvalues.size() != sd.multiplicities.size())
    fail(ErrorCode::ConvergenceFailure, "inconsistent decomposition bookkeeping");
  for (std::size_t r = 1; r < sd.eigenvalues.size(); ++r)
    if (!(sd.eigenvalues[r] > sd.eigenvalues[r - 1]))
      fail(ErrorCode::ConvergenceFailure, "eigenvalues not strictly increasing");

  ComplexMatrix resolution = ComplexMatrix::zeros(n);
  ComplexMatrix reconstruction = ComplexMatrix::zeros(n);
  for (std::size_t r = 0; r < sd.projectors.size(); ++r) {
    const ComplexMatrix& e = sd.projectors[r];
    if ((e * e - e).max_abs() > bound)
      fail(ErrorCode::ConvergenceFailure, "projector not idempotent within tolerance");
    if ((e - e.adjoint()).max_abs() > bound)
      fail(ErrorCode::ConvergenceFailure, "projector not Hermitian within tolerance");
    resolution = resolution + e;
    reconstruction = reconstruction + sd.eigenvalues[r] * e;
  }
  if ((resolution - ComplexMatrix::identity(n)).max_abs() > bound)
    fail(ErrorCode::ConvergenceFailure, "projectors do not resolve the identity");
  if ((reconstruction - a.matrix()).max_abs() > bound)
    fail(ErrorCode::ConvergenceFailure, "spectral reconstruction drifted from input");
  for (std::size_t r = 0; r < sd.projectors.size(); ++r)
    for (std::size_t s = r + 1; s < sd.projectors.size(); ++s)
      if ((sd.projectors[r] * sd.projectors[s]).max_abs() > bound)
        fail(ErrorCode::ConvergenceFailure, "projectors not mutually orthogonal");
}

}  // namespace detail

// Cyclic complex Jacobi diagonalization. Convergence when the off-diagonal
// Frobenius norm falls below 1e-12 * max(1, inf_norm(A)); hard cap of 100
// sweeps. Eigenvalues closer than 1e-8 * max(1, inf_norm(A)) after sorting
// are merged into one eigenspace and the projector is built from the
// orthonormalized span of the merged columns.
inline SpectralDecomposition eigh(const HermitianMatrix& input) {
  const std::size_t n = input.n();
  const double source_norm = input.inf_norm();
  const double conv_tol = 1e-12 * std::max(1.0, source_norm);
  const double group_tol = 1e-8 * std::max(1.0, source_norm);
  constexpr int kMaxSweeps = 100;

  ComplexMatrix a = input.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  if (n > 1) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (detail::offdiag_frobenius(a) <= conv_tol) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    }
    if (!converged && detail::offdiag_frobenius(a) > conv_tol)
      fail(ErrorCode::ConvergenceFailure,
           "off-diagonal norm " + std::to_string(detail::offdiag_frobenius(a)) +
               " after " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a.at(i, i).real() < a.at(j, j).real();
  });

  SpectralDecomposition sd;
  sd.source_norm = source_norm;
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    // Chain merging: extend while consecutive sorted eigenvalues stay close.
    while (stop < n && a.at(order[stop], order[stop]).real() -
                               a.at(order[stop - 1], order[stop - 1]).real() <=
                           group_tol)
      ++stop;
    std::vector<std::size_t> cols(order.begin() + start, order.begin() + stop);
    double lambda = 0.0;
    for (std::size_t c : cols) lambda += a.at(c, c).real();
    lambda /= static_cast<double>(cols.size());

    detail::orthonormalize_columns(v, cols);
    ComplexMatrix e = ComplexMatrix::zeros(n);
    for (std::size_t c : cols)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          e.at(i, j) += v.at(i, c) * std::conj(v.at(j, c));
    sd.eigenvalues.push_back(lambda);
    sd.multiplicities.push_back(cols.size());
    sd.projectors.push_back(std::move(e));
    start = stop;
  }

  detail::validate_decomposition(sd, input);
  return sd;
}

// Applies a scalar function over the spectrum: sum_r f(lambda_r) E_r.
template <class F>
ComplexMatrix spectral_apply(const SpectralDecomposition& sd, F&& f) {
  if (sd.projectors.empty()) fail(ErrorCode::BadInput, "empty decomposition");
  const std::size_t n = sd.order();
  ComplexMatrix r = ComplexMatrix::zeros(n);
  for (std::size_t k = 0; k < sd.projectors.size(); ++k) {
    const cplx w = f(sd.eigenvalues[k]);
    r = r + w * sd.projectors[k];
  }
  return r;
}

}  // namespace qwmix
