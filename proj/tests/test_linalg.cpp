#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"

using qwmix::ComplexMatrix;
using qwmix::cplx;
using qwmix::Error;
using qwmix::ErrorCode;

namespace {

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == code);
  }
}

double entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

}  // namespace

TEST_CASE("matrix construction and arithmetic") {
  ComplexMatrix m(2, 3);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  REQUIRE(!m.square());
  m.at(0, 2) = cplx(1.0, -2.0);
  REQUIRE(m.at(0, 2) == cplx(1.0, -2.0));
  REQUIRE(m.at(1, 0) == cplx(0.0, 0.0));

  const ComplexMatrix id = ComplexMatrix::identity(3);
  REQUIRE(id.at(2, 2) == cplx(1.0, 0.0));
  REQUIRE(id.at(0, 1) == cplx(0.0, 0.0));

  SECTION("adjoint conjugates and transposes") {
    const ComplexMatrix mt = m.transpose();
    const ComplexMatrix ma = m.adjoint();
    REQUIRE(mt.rows() == 3);
    REQUIRE(mt.at(2, 0) == cplx(1.0, -2.0));
    REQUIRE(ma.at(2, 0) == cplx(1.0, 2.0));
  }

  SECTION("multiplication by the identity is a no-op") {
    const ComplexMatrix p = m * id;
    REQUIRE(entry_distance(p, m) == 0.0);
  }

  SECTION("product entries") {
    ComplexMatrix a(2, 2), b(2, 2);
    a.at(0, 0) = cplx(0.0, 1.0);
    a.at(0, 1) = 2.0;
    a.at(1, 1) = cplx(1.0, 1.0);
    b.at(0, 0) = 3.0;
    b.at(1, 0) = cplx(0.0, -1.0);
    const ComplexMatrix p = a * b;
    REQUIRE(std::abs(p.at(0, 0) - cplx(0.0, 1.0)) == 0.0);  // i*3 + 2*(-i)
    REQUIRE(std::abs(p.at(1, 0) - cplx(1.0, -1.0)) == 0.0);
  }

  SECTION("norms") {
    ComplexMatrix a(2, 2);
    a.at(0, 0) = cplx(3.0, 4.0);
    a.at(1, 0) = 1.0;
    a.at(1, 1) = -2.0;
    REQUIRE(a.max_abs() == 5.0);
    REQUIRE(a.inf_norm() == 5.0);  // row 0: |3+4i| = 5; row 1: 1 + 2 = 3
    REQUIRE(a.all_finite());
    a.at(0, 1) = std::numeric_limits<double>::infinity();
    REQUIRE(!a.all_finite());
  }
}

TEST_CASE("kronecker and schur products") {
  ComplexMatrix a(2, 2), b(2, 2);
  a.at(0, 1) = cplx(0.0, 1.0);
  a.at(1, 0) = cplx(0.0, -1.0);
  b.at(0, 0) = 2.0;
  b.at(1, 1) = 3.0;

  const ComplexMatrix k = qwmix::kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.at(0, 2) == cplx(0.0, 2.0));  // a(0,1) * b(0,0)
  REQUIRE(k.at(1, 3) == cplx(0.0, 3.0));  // a(0,1) * b(1,1)
  REQUIRE(k.at(2, 0) == cplx(0.0, -2.0));

  const ComplexMatrix s = qwmix::schur_product(a, a.adjoint());
  REQUIRE(s.at(0, 1) == cplx(-1.0, 0.0));  // a is Hermitian, so i * i
  REQUIRE(s.at(0, 0) == cplx(0.0, 0.0));
}

TEST_CASE("hermitize guards the Hermitian invariant") {
  ComplexMatrix good(2, 2);
  good.at(0, 1) = cplx(0.0, 1.0);
  good.at(1, 0) = cplx(0.0, -1.0);
  const qwmix::HermitianMatrix h = qwmix::hermitize(good);
  REQUIRE(h.n() == 2);
  REQUIRE(h.at(0, 1) == cplx(0.0, 1.0));

  SECTION("exact input is stored unchanged") {
    REQUIRE(h.at(1, 0) == std::conj(h.at(0, 1)));
  }

  SECTION("tiny drift is symmetrized away") {
    ComplexMatrix near = good;
    near.at(0, 1) += cplx(1e-13, 0.0);
    const qwmix::HermitianMatrix fixed = qwmix::hermitize(near);
    REQUIRE(fixed.at(0, 1) == std::conj(fixed.at(1, 0)));
    REQUIRE(fixed.at(0, 0).imag() == 0.0);
  }

  SECTION("asymmetry beyond tolerance is rejected") {
    ComplexMatrix bad = good;
    bad.at(0, 1) += cplx(1e-6, 0.0);
    expect_error(ErrorCode::NotHermitian, [&] { qwmix::hermitize(bad); });
  }

  SECTION("non-square input is rejected") {
    expect_error(ErrorCode::NotSquare, [&] { qwmix::hermitize(ComplexMatrix(2, 3)); });
  }
}

TEST_CASE("spectra of frozen small matrices") {
  SECTION("real diagonal") {
    ComplexMatrix d(3, 3);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = 1.0;
    d.at(2, 2) = 2.0;
    const auto sd = qwmix::eigh(qwmix::hermitize(d));
    REQUIRE(sd.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});
    REQUIRE(sd.multiplicities == std::vector<std::size_t>{1, 1, 1});
    REQUIRE(std::abs(sd.projectors[0].at(1, 1) - cplx(1.0, 0.0)) <= 1e-15);
  }

  SECTION("complete graph on three vertices") {
    ComplexMatrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) a.at(i, j) = 1.0;
    const auto sd = qwmix::eigh(qwmix::hermitize(a));
    REQUIRE(sd.eigenvalues.size() == 2);
    REQUIRE(std::abs(sd.eigenvalues[0] - (-1.0)) <= 1e-12);
    REQUIRE(std::abs(sd.eigenvalues[1] - 2.0) <= 1e-12);
    REQUIRE(sd.multiplicities == std::vector<std::size_t>{2, 1});
    // The top projector averages: every entry 1/3.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(std::abs(sd.projectors[1].at(i, j) - cplx(1.0 / 3.0, 0.0)) <= 1e-12);
  }

  SECTION("oriented edge") {
    ComplexMatrix a(2, 2);
    a.at(0, 1) = cplx(0.0, 1.0);
    a.at(1, 0) = cplx(0.0, -1.0);
    const auto sd = qwmix::eigh(qwmix::hermitize(a));
    REQUIRE(std::abs(sd.eigenvalues[0] + 1.0) <= 1e-12);
    REQUIRE(std::abs(sd.eigenvalues[1] - 1.0) <= 1e-12);
    // lambda = 1 eigenvector (1, -i)/sqrt(2)
    REQUIRE(std::abs(sd.projectors[1].at(0, 0) - cplx(0.5, 0.0)) <= 1e-12);
    REQUIRE(std::abs(sd.projectors[1].at(0, 1) - cplx(0.0, 0.5)) <= 1e-12);
  }

  SECTION("near-degenerate values merge into one eigenspace") {
    ComplexMatrix d(3, 3);
    d.at(0, 0) = 0.0;
    d.at(1, 1) = 1e-12;
    d.at(2, 2) = 5.0;
    const auto sd = qwmix::eigh(qwmix::hermitize(d));
    REQUIRE(sd.multiplicities == std::vector<std::size_t>{2, 1});
  }
}

TEST_CASE("decomposition identities on a pseudo-random Hermitian matrix") {
  const std::size_t n = 6;
  ComplexMatrix a(n, n);
  std::uint64_t x = 0x9E3779B97F4A7C15ULL;
  auto next_unit = [&x] {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return static_cast<double>(x >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = next_unit();
    for (std::size_t j = i + 1; j < n; ++j) {
      a.at(i, j) = cplx(next_unit(), next_unit());
      a.at(j, i) = std::conj(a.at(i, j));
    }
  }
  const qwmix::HermitianMatrix h = qwmix::hermitize(a);
  const auto sd = qwmix::eigh(h);

  ComplexMatrix resolution(n, n), reconstruction(n, n);
  for (std::size_t r = 0; r < sd.projectors.size(); ++r) {
    resolution = resolution + sd.projectors[r];
    reconstruction = reconstruction + sd.eigenvalues[r] * sd.projectors[r];
  }
  REQUIRE(entry_distance(resolution, ComplexMatrix::identity(n)) <= 1e-10);
  REQUIRE(entry_distance(reconstruction, h.matrix()) <= 1e-10);

  for (std::size_t r = 0; r < sd.projectors.size(); ++r) {
    REQUIRE(entry_distance(sd.projectors[r] * sd.projectors[r], sd.projectors[r]) <= 1e-10);
    for (std::size_t s = r + 1; s < sd.projectors.size(); ++s)
      REQUIRE((sd.projectors[r] * sd.projectors[s]).max_abs() <= 1e-10);
  }

  SECTION("spectral_apply matches direct polynomial evaluation") {
    const ComplexMatrix squared =
        qwmix::spectral_apply(sd, [](double lam) { return cplx(lam * lam, 0.0); });
    REQUIRE(entry_distance(squared, h.matrix() * h.matrix()) <= 1e-9);
  }
}
