#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"

namespace qwmix {

// Entrywise squared moduli of the walk operator at a fixed time. Rows and
// columns each sum to one; entry (u, v) is the probability of finding the
// walker at u after starting at v.
struct MixingMatrix {
  std::size_t n = 0;
  double time = 0.0;
  std::vector<double> p;

  double at(std::size_t u, std::size_t v) const { return p[u * n + v]; }
};

// Time-averaged mixing matrix. Exact instances come from the spectral
// formula sum_r E_r o conj(E_r) and satisfy symmetry and positive
// semidefiniteness; quadrature instances approximate the infinite time
// average over a finite horizon and only promise double stochasticity.
struct AverageMixingMatrix {
  std::size_t n = 0;
  bool exact = false;
  std::vector<double> p;

  double at(std::size_t u, std::size_t v) const { return p[u * n + v]; }
  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += at(i, i);
    return t;
  }
};

struct UniformityReport {
  bool uniform = false;
  double epsilon = 0.0;
  double max_deviation = 0.0;
  std::size_t worst_u = 0;
  std::size_t worst_v = 0;
};

struct SearchResult {
  std::optional<double> time;  // earliest uniform instant when one exists
  double min_deviation = 0.0;  // smallest deviation seen over the scan
  double argmin = 0.0;         // where that smallest deviation occurred
};

namespace detail {

inline void check_doubly_stochastic(std::size_t n, const std::vector<double>& p,
                                    const char* who) {
  for (double x : p) {
    if (!std::isfinite(x)) fail(ErrorCode::BadInput, std::string(who) + " has non-finite entries");
    if (x < -1e-12)
      fail(ErrorCode::PreconditionUnmet,
           std::string(who) + " has negative entry " + std::to_string(x));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double rs = 0.0, cs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      rs += p[i * n + j];
      cs += p[j * n + i];
    }
    if (std::abs(rs - 1.0) > 1e-9 || std::abs(cs - 1.0) > 1e-9)
      fail(ErrorCode::PreconditionUnmet,
           std::string(who) + " is not doubly stochastic at line " + std::to_string(i));
  }
}

inline UniformityReport uniformity_of(std::size_t n, const std::vector<double>& p,
                                      double eps) {
  UniformityReport r;
  r.epsilon = eps;
  const double target = 1.0 / static_cast<double>(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const double d = std::abs(p[u * n + v] - target);
      if (d > r.max_deviation) {
        r.max_deviation = d;
        r.worst_u = u;
        r.worst_v = v;
      }
    }
  r.uniform = r.max_deviation <= eps;
  return r;
}

// Scaling-and-squaring Taylor exponential for a general square matrix.
inline ComplexMatrix expm_taylor(const ComplexMatrix& m) {
  if (!m.square()) fail(ErrorCode::NotSquare, "matrix exponential needs a square matrix");
  const std::size_t n = m.rows();
  const double norm = m.inf_norm();
  int s = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled /= 2.0;
    ++s;
  }
  const double factor = std::ldexp(1.0, -s);
  ComplexMatrix b = cplx(factor, 0.0) * m;
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = cplx(1.0 / static_cast<double>(k), 0.0) * (term * b);
    result = result + term;
    if (term.max_abs() < 1e-20) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

}  // namespace detail

// Spectral view of the walk exp(-iAt). Builds the eigendecomposition once
// and evaluates operators at arbitrary times from it.
class WalkOperator {
 public:
  explicit WalkOperator(const HermitianMatrix& a) : sd_(eigh(a)), n_(a.n()) {}

  const SpectralDecomposition& spectrum() const { return sd_; }
  std::size_t n() const { return n_; }

  ComplexMatrix unitary_at(double t) const {
    return spectral_apply(sd_, [t](double lam) {
      return cplx(std::cos(lam * t), -std::sin(lam * t));
    });
  }

  MixingMatrix mixing_at(double t) const {
    MixingMatrix m;
    m.n = n_;
    m.time = t;
    m.p = probabilities_at(t);
    detail::check_doubly_stochastic(n_, m.p, "mixing matrix");
    return m;
  }

  // Unvalidated fast path used by the time scan.
  double uniform_deviation_at(double t) const {
    const std::vector<double> p = probabilities_at(t);
    const double target = 1.0 / static_cast<double>(n_);
    double worst = 0.0;
    for (double x : p) worst = std::max(worst, std::abs(x - target));
    return worst;
  }

 private:
  std::vector<double> probabilities_at(double t) const {
    const ComplexMatrix u = unitary_at(t);
    std::vector<double> p(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) p[i * n_ + j] = std::norm(u.at(i, j));
    return p;
  }

  SpectralDecomposition sd_;
  std::size_t n_;
};

// exp(-iAt) with a unitarity postcondition.
inline ComplexMatrix evolution(const HermitianMatrix& a, double t) {
  const ComplexMatrix u = WalkOperator(a).unitary_at(t);
  const ComplexMatrix drift = u.adjoint() * u - ComplexMatrix::identity(a.n());
  if (drift.max_abs() > 1e-9)
    fail(ErrorCode::ConvergenceFailure,
         "evolution lost unitarity by " + std::to_string(drift.max_abs()));
  return u;
}

inline MixingMatrix mixing_matrix(const HermitianMatrix& a, double t) {
  return WalkOperator(a).mixing_at(t);
}

// Max-norm distance of two mixing matrices at a common time. Switching
// equivalent graphs give zero up to rounding.
inline double mixing_distance(const HermitianMatrix& a, const HermitianMatrix& b,
                              double t) {
  if (a.n() != b.n()) fail(ErrorCode::DimensionMismatch, "orders differ");
  const MixingMatrix ma = mixing_matrix(a, t);
  const MixingMatrix mb = mixing_matrix(b, t);
  double worst = 0.0;
  for (std::size_t k = 0; k < ma.p.size(); ++k)
    worst = std::max(worst, std::abs(ma.p[k] - mb.p[k]));
  return worst;
}

inline UniformityReport is_uniform(const MixingMatrix& m, double eps) {
  return detail::uniformity_of(m.n, m.p, eps);
}

// Uniformity of the distribution seen by a walker that starts at vertex a,
// which is column a of the mixing matrix.
inline UniformityReport is_local_uniform(const MixingMatrix& m, std::size_t a,
                                         double eps) {
  if (a >= m.n) fail(ErrorCode::IndexOutOfRange, "vertex out of range");
  UniformityReport r;
  r.epsilon = eps;
  const double target = 1.0 / static_cast<double>(m.n);
  for (std::size_t v = 0; v < m.n; ++v) {
    const double d = std::abs(m.at(v, a) - target);
    if (d > r.max_deviation) {
      r.max_deviation = d;
      r.worst_u = v;
      r.worst_v = a;
    }
  }
  r.uniform = r.max_deviation <= eps;
  return r;
}

// Lower bound on the trace of the exact average mixing matrix from the
// eigenvalue multiplicities: sum_r m_r^2 / n.
inline double trace_lower_bound(const SpectralDecomposition& sd) {
  double s = 0.0;
  for (std::size_t m : sd.multiplicities) s += static_cast<double>(m * m);
  return s / static_cast<double>(sd.order());
}

// Exact time average of the mixing matrix: sum_r E_r o conj(E_r).
inline AverageMixingMatrix average_mixing(const HermitianMatrix& a) {
  const SpectralDecomposition sd = eigh(a);
  const std::size_t n = a.n();
  AverageMixingMatrix m;
  m.n = n;
  m.exact = true;
  m.p.assign(n * n, 0.0);
  for (const ComplexMatrix& e : sd.projectors)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.p[i * n + j] += std::norm(e.at(i, j));
  detail::check_doubly_stochastic(n, m.p, "average mixing matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m.p[i * n + j] - m.p[j * n + i]) > 1e-10)
        fail(ErrorCode::PreconditionUnmet, "exact average mixing matrix not symmetric");
  const double bound = trace_lower_bound(sd);
  if (m.trace() < bound - 1e-8)
    fail(ErrorCode::PreconditionUnmet,
         "average mixing trace " + std::to_string(m.trace()) +
             " below spectral bound " + std::to_string(bound));
  {
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h.at(i, j) = m.p[i * n + j];
    const SpectralDecomposition psd = eigh(hermitize(h, 1e-9));
    if (psd.eigenvalues.front() < -1e-9)
      fail(ErrorCode::PreconditionUnmet, "exact average mixing matrix not PSD");
  }
  return m;
}

// Finite-horizon Cesaro average of M(t) by the trapezoid rule. Independent
// of the eigensolver: the walk steps forward with a Taylor exponential.
inline AverageMixingMatrix average_mixing_cesaro(const HermitianMatrix& a,
                                                 double horizon, std::size_t steps) {
  if (!(horizon > 0.0)) fail(ErrorCode::BadInput, "horizon must be positive");
  if (steps < 100) fail(ErrorCode::BadInput, "need at least 100 quadrature steps");
  const std::size_t n = a.n();
  const double h = horizon / static_cast<double>(steps);
  const ComplexMatrix step = detail::expm_taylor(cplx(0.0, -h) * a.matrix());
  ComplexMatrix u = ComplexMatrix::identity(n);
  std::vector<double> acc(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = 0.5;  // M(0) = I at half weight
  for (std::size_t k = 1; k <= steps; ++k) {
    u = u * step;
    const double w = (k == steps) ? 0.5 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += w * std::norm(u.at(i, j));
  }
  const ComplexMatrix drift = u.adjoint() * u - ComplexMatrix::identity(n);
  if (drift.max_abs() > 1e-8)
    fail(ErrorCode::ConvergenceFailure,
         "stepped walk lost unitarity by " + std::to_string(drift.max_abs()));
  AverageMixingMatrix m;
  m.n = n;
  m.exact = false;
  m.p.resize(n * n);
  for (std::size_t k = 0; k < acc.size(); ++k) m.p[k] = acc[k] / static_cast<double>(steps);
  detail::check_doubly_stochastic(n, m.p, "averaged mixing quadrature");
  return m;
}

inline UniformityReport average_uniformity(const AverageMixingMatrix& m, double eps) {
  return detail::uniformity_of(m.n, m.p, eps);
}

inline UniformityReport has_average_uniform(const HermitianMatrix& a, double eps) {
  return average_uniformity(average_mixing(a), eps);
}

namespace detail {

// Golden-section minimization of f on [lo, hi] down to interval width tol.
template <class F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return (f1 <= f2) ? x1 : x2;
}

}  // namespace detail

// Scans [0, t_max] on a uniform grid for instants of uniform mixing. Every
// grid-local minimum of the deviation is refined by golden-section search to
// interval width 1e-12; the earliest refined instant with deviation <= eps
// wins. Without one, the result reports the smallest deviation seen.
inline SearchResult mixing_time_search(const HermitianMatrix& a, double t_max,
                                       double eps, std::size_t grid_points = 20000) {
  if (!(t_max > 0.0)) fail(ErrorCode::BadInput, "t_max must be positive");
  if (grid_points < 2) fail(ErrorCode::BadInput, "need at least 2 grid points");
  const WalkOperator walk(a);
  const auto f = [&](double t) { return walk.uniform_deviation_at(t); };

  const double dt = t_max / static_cast<double>(grid_points);
  std::vector<double> vals(grid_points + 1);
  for (std::size_t k = 0; k <= grid_points; ++k) vals[k] = f(dt * static_cast<double>(k));

  SearchResult res;
  res.min_deviation = vals[0];
  res.argmin = 0.0;
  for (std::size_t k = 0; k <= grid_points; ++k)
    if (vals[k] < res.min_deviation) {
      res.min_deviation = vals[k];
      res.argmin = dt * static_cast<double>(k);
    }

  for (std::size_t k = 0; k <= grid_points; ++k) {
    const bool left_ok = (k == 0) || vals[k] <= vals[k - 1];
    const bool right_ok = (k == grid_points) || vals[k] <= vals[k + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = (k == 0) ? 0.0 : dt * static_cast<double>(k - 1);
    const double hi = (k == grid_points) ? t_max : dt * static_cast<double>(k + 1);
    const double t_star = detail::golden_minimize(f, lo, hi, 1e-12);
    const double v = f(t_star);
    if (v < res.min_deviation) {
      res.min_deviation = v;
      res.argmin = t_star;
    }
    if (v <= eps) {
      res.time = t_star;
      return res;
    }
  }
  return res;
}

}  // namespace qwmix
