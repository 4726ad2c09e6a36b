#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qwmix/error.hpp"
#include "qwmix/graphs.hpp"
#include "qwmix/quotient.hpp"

using qwmix::ComplexMatrix;
using qwmix::cplx;
using qwmix::Error;
using qwmix::ErrorCode;
using qwmix::HermitianMatrix;
using qwmix::Partition;

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

}  // namespace

TEST_CASE("star quotient collapses the leaves") {
  const HermitianMatrix star = qwmix::claw(3);
  const Partition cells = {{0}, {1, 2, 3}};
  const qwmix::EquitablePartition ep = qwmix::verify_equitable(star, cells);

  SECTION("normalized characteristic matrix") {
    REQUIRE(std::abs(ep.s.at(0, 0) - cplx(1.0, 0.0)) <= 1e-15);
    REQUIRE(std::abs(ep.s.at(1, 1) - cplx(1.0 / std::sqrt(3.0), 0.0)) <= 1e-15);
    REQUIRE(std::abs(ep.s.at(1, 0)) == 0.0);
    const ComplexMatrix gram = ep.s.adjoint() * ep.s;
    REQUIRE((gram - ComplexMatrix::identity(2)).max_abs() <= 1e-15);
  }

  SECTION("quotient matrix is the frozen two-by-two") {
    const HermitianMatrix b = qwmix::quotient_matrix(ep, star);
    REQUIRE(std::abs(b.at(0, 0)) <= 1e-15);
    REQUIRE(std::abs(b.at(1, 1)) <= 1e-15);
    REQUIRE(std::abs(b.at(0, 1) - cplx(std::sqrt(3.0), 0.0)) <= 1e-12);
  }

  SECTION("walk intertwines with the quotient walk") {
    for (double t : {0.1, 0.9, 2.7, 6.28}) {
      REQUIRE(qwmix::quotient_walk_check(ep, star, t) <= 1e-10);
    }
  }
}

TEST_CASE("oriented cone quotient") {
  const HermitianMatrix cone = qwmix::cone_over(qwmix::oriented_cycle(3));
  const Partition cells = {{0}, {1, 2, 3}};
  const qwmix::EquitablePartition ep = qwmix::verify_equitable(cone, cells);
  const HermitianMatrix b = qwmix::quotient_matrix(ep, cone);

  // The base signing cancels inside the cell, leaving the star quotient.
  REQUIRE(std::abs(b.at(0, 1) - cplx(std::sqrt(3.0), 0.0)) <= 1e-12);
  REQUIRE(std::abs(b.at(1, 1)) <= 1e-12);
  for (double t : {0.4, 1.3, 5.0}) REQUIRE(qwmix::quotient_walk_check(ep, cone, t) <= 1e-10);
}

TEST_CASE("equitability is verified, not assumed") {
  // In the path 0-1-2, the end cells see different neighbor counts.
  expect_error(ErrorCode::NotEquitable,
               [] { qwmix::verify_equitable(qwmix::path(3), {{0}, {1, 2}}); });

  SECTION("partitions must cover every vertex exactly once") {
    expect_error(ErrorCode::BadInput,
                 [] { qwmix::verify_equitable(qwmix::path(3), {{0}, {1}}); });
    expect_error(ErrorCode::BadInput,
                 [] { qwmix::verify_equitable(qwmix::path(3), {{0, 1}, {1, 2}}); });
    expect_error(ErrorCode::IndexOutOfRange,
                 [] { qwmix::verify_equitable(qwmix::path(3), {{0, 1}, {2, 7}}); });
  }
}

TEST_CASE("singleton cells reproduce walk amplitudes") {
  const HermitianMatrix k2 = qwmix::complete(2);
  const qwmix::EquitablePartition ep = qwmix::verify_equitable(k2, {{0}, {1}});
  REQUIRE(qwmix::singleton_entry_check(ep, k2, 0, 1, 1.234) <= 1e-12);

  const HermitianMatrix star = qwmix::claw(3);
  const qwmix::EquitablePartition sep = qwmix::verify_equitable(star, {{0}, {1, 2, 3}});
  expect_error(ErrorCode::CellNotSingleton,
               [&] { qwmix::singleton_entry_check(sep, star, 0, 1, 1.0); });
}

TEST_CASE("switching by a diagonal phase") {
  const HermitianMatrix k2 = qwmix::complete(2);
  const HermitianMatrix switched = qwmix::switch_by(k2, {cplx(1.0, 0.0), cplx(-1.0, 0.0)});
  REQUIRE(std::abs(switched.at(0, 1) - cplx(-1.0, 0.0)) <= 1e-15);

  SECTION("phases must be unit modulus") {
    expect_error(ErrorCode::BadInput,
                 [&] { qwmix::switch_by(k2, {cplx(2.0, 0.0), cplx(1.0, 0.0)}); });
  }
}

TEST_CASE("switching certificates") {
  const HermitianMatrix chiral = qwmix::k4_chiral_signing();
  const HermitianMatrix cone = qwmix::cone_over(qwmix::oriented_cycle(3));

  SECTION("the chiral clique and the oriented cone are equivalent") {
    const auto cert = qwmix::switching_certificate(chiral, cone);
    REQUIRE(cert.has_value());
    REQUIRE(cert->residual <= 1e-12);
    // Certificate phases are unit modulus and reproduce the target exactly.
    for (const cplx& d : cert->diag) REQUIRE(std::abs(std::abs(d) - 1.0) <= 1e-12);
    const HermitianMatrix moved = qwmix::switch_by(chiral, cert->diag);
    REQUIRE((moved.matrix() - cone.matrix()).max_abs() <= 1e-12);
  }

  SECTION("a graph certifies against itself with constant phases") {
    const auto cert = qwmix::switching_certificate(cone, cone);
    REQUIRE(cert.has_value());
    for (std::size_t v = 1; v < 4; ++v)
      REQUIRE(std::abs(cert->diag[v] - cert->diag[0]) <= 1e-12);
  }

  SECTION("different signing classes yield no certificate") {
    const auto cert = qwmix::switching_certificate(chiral, qwmix::complete(4));
    REQUIRE(!cert.has_value());
  }

  SECTION("different supports are a structural mismatch") {
    expect_error(ErrorCode::SupportMismatch,
                 [] { qwmix::switching_certificate(qwmix::path(4), qwmix::cycle(4)); });
    expect_error(ErrorCode::DimensionMismatch,
                 [] { qwmix::switching_certificate(qwmix::path(3), qwmix::cycle(4)); });
  }
}
