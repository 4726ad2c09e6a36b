#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qwmix/error.hpp"

namespace qwmix {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Everything in this library is desk scale
// (n <= a few thousand), so the representation favours clarity over blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cplx>& data() const { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  // Maximum absolute row sum. Used as the scale factor for tolerances.
  double inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs(at(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  bool all_finite() const {
    for (const cplx& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator+");
    ComplexMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator-");
    ComplexMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }

  friend ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
    ComplexMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
    return r;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      fail(ErrorCode::ShapeMismatch,
           "cannot multiply " + shape_string(a) + " by " + shape_string(b));
    ComplexMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a.at(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    }
    return r;
  }

  std::vector<cplx> apply(const std::vector<cplx>& v) const {
    if (v.size() != cols_)
      fail(ErrorCode::ShapeMismatch, "vector length does not match matrix columns");
    std::vector<cplx> r(rows_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  static std::string shape_string(const ComplexMatrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }

 private:
  static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const char* op) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      fail(ErrorCode::ShapeMismatch,
           std::string(op) + " on " + shape_string(a) + " and " + shape_string(b));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Entrywise product followed by entrywise conjugate of the second factor is
// spelled out at call sites; this is the plain entrywise product.
inline ComplexMatrix schur_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::ShapeMismatch, "entrywise product needs equal shapes");
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) * b.at(i, j);
  return r;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a.at(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
    }
  return r;
}

// Hermitian matrix with exactly conjugate-symmetric storage and a real
// diagonal. Obtained through hermitize(), never constructed raw.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  std::size_t n() const { return m_.rows(); }
  const cplx& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  const ComplexMatrix& matrix() const { return m_; }
  double inf_norm() const { return m_.inf_norm(); }
  double max_abs() const { return m_.max_abs(); }

  friend HermitianMatrix hermitize(const ComplexMatrix& m, double tol_scale);

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Symmetrizes M to (M + M*)/2 after checking that the correction is within
// tol_scale * max(1, |M|_max). Entries that already match their mirror are
// preserved bit for bit since (x + x) / 2 == x.
inline HermitianMatrix hermitize(const ComplexMatrix& m, double tol_scale = 1e-10) {
  if (!m.square())
    fail(ErrorCode::NotSquare, "hermitize needs a square matrix, got " +
                                   ComplexMatrix::shape_string(m));
  if (!m.all_finite()) fail(ErrorCode::BadInput, "hermitize given non-finite entries");
  const std::size_t n = m.rows();
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      dev = std::max(dev, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
  const double bound = tol_scale * std::max(1.0, m.max_abs());
  if (dev > bound)
    fail(ErrorCode::NotHermitian, "asymmetry " + std::to_string(dev) +
                                      " exceeds bound " + std::to_string(bound));
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h.at(i, i) = cplx((m.at(i, i).real() + m.at(i, i).real()) / 2.0, 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = (m.at(i, j) + std::conj(m.at(j, i))) / 2.0;
      h.at(i, j) = v;
      h.at(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(h));
}

}  // namespace qwmix
