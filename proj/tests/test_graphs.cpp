#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graphs.hpp"

using qwmix::ComplexMatrix;
using qwmix::cplx;
using qwmix::Error;
using qwmix::ErrorCode;
using qwmix::HermitianMatrix;

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

double matrix_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).max_abs();
}

std::vector<double> sorted_spectrum(const HermitianMatrix& a) {
  const auto sd = qwmix::eigh(a);
  std::vector<double> out;
  for (std::size_t r = 0; r < sd.multiplicities.size(); ++r)
    out.insert(out.end(), sd.multiplicities[r], sd.eigenvalues[r]);
  return out;
}

double max_row_sum(const HermitianMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < a.n(); ++j) s += a.at(i, j);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace

TEST_CASE("unsigned families") {
  REQUIRE(qwmix::complete(4).at(0, 3) == cplx(1.0, 0.0));
  REQUIRE(qwmix::complete(4).at(2, 2) == cplx(0.0, 0.0));
  REQUIRE(qwmix::empty_graph(3).matrix().max_abs() == 0.0);

  const HermitianMatrix p = qwmix::path(4);
  REQUIRE(p.at(0, 1) == cplx(1.0, 0.0));
  REQUIRE(p.at(0, 2) == cplx(0.0, 0.0));
  REQUIRE(p.at(2, 3) == cplx(1.0, 0.0));

  const HermitianMatrix c = qwmix::cycle(5);
  REQUIRE(c.at(0, 4) == cplx(1.0, 0.0));
  REQUIRE(c.at(0, 2) == cplx(0.0, 0.0));

  SECTION("claw is the join of an apex with isolated leaves") {
    const HermitianMatrix k13 = qwmix::claw(3);
    REQUIRE(k13.n() == 4);
    for (int leaf = 1; leaf < 4; ++leaf) REQUIRE(k13.at(0, leaf) == cplx(1.0, 0.0));
    REQUIRE(k13.at(1, 2) == cplx(0.0, 0.0));
  }

  SECTION("complement swaps edges and non-edges") {
    REQUIRE(matrix_distance(qwmix::complement_of(qwmix::complete(4)),
                            qwmix::empty_graph(4)) == 0.0);
    const HermitianMatrix cp3 = qwmix::complement_of(qwmix::path(3));
    REQUIRE(cp3.at(0, 2) == cplx(1.0, 0.0));
    REQUIRE(cp3.at(0, 1) == cplx(0.0, 0.0));
  }

  SECTION("laplacian of the path") {
    const std::vector<double> eigs = sorted_spectrum(qwmix::laplacian(qwmix::path(3)));
    REQUIRE(eigs.size() == 3);
    REQUIRE(std::abs(eigs[0] - 0.0) <= 1e-12);
    REQUIRE(std::abs(eigs[1] - 1.0) <= 1e-12);
    REQUIRE(std::abs(eigs[2] - 3.0) <= 1e-12);
  }

  SECTION("laplacian rejects signed input") {
    expect_error(ErrorCode::NotSimpleGraph,
                 [] { qwmix::laplacian(qwmix::oriented_cycle(3)); });
  }

  SECTION("degenerate orders are rejected") {
    expect_error(ErrorCode::TooSmall, [] { qwmix::complete(0); });
    expect_error(ErrorCode::TooSmall, [] { qwmix::cycle(2); });
  }
}

TEST_CASE("circulants") {
  const HermitianMatrix c = qwmix::circulant({0.0, 1.0, 0.0, 1.0});
  REQUIRE(matrix_distance(c, qwmix::cycle(4)) == 0.0);

  SECTION("first row must be conjugate-symmetric") {
    expect_error(ErrorCode::NotHermitianCirculant,
                 [] { qwmix::circulant({cplx(0.0, 0.0), cplx(0.0, 1.0), cplx(0.0, 1.0)}); });
  }

  SECTION("oriented cycle eigenvalues are 2 sin(2 pi k / n)") {
    const std::size_t n = 7;
    std::vector<double> expected;
    for (std::size_t k = 0; k < n; ++k)
      expected.push_back(2.0 * std::sin(2.0 * std::numbers::pi *
                                        static_cast<double>(k) / static_cast<double>(n)));
    std::sort(expected.begin(), expected.end());
    const std::vector<double> got = sorted_spectrum(qwmix::oriented_cycle(n));
    REQUIRE(got.size() == n);
    for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(got[k] - expected[k]) <= 1e-9);
  }
}

TEST_CASE("signed clique constructions") {
  SECTION("odd signing on three vertices is the oriented triangle") {
    const HermitianMatrix a = qwmix::odd_clique_signing(3);
    REQUIRE(a.at(0, 1) == cplx(0.0, -1.0));
    REQUIRE(a.at(0, 2) == cplx(0.0, 1.0));
    REQUIRE(a.at(1, 2) == cplx(0.0, -1.0));
    REQUIRE(max_row_sum(a) <= 1e-12);
  }

  SECTION("even signing on eight vertices matches the frozen block pattern") {
    const std::size_t q = 7;
    std::vector<cplx> pw(q);
    for (std::size_t p = 0; p < q; ++p) {
      const double ang =
          2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
      pw[p] = cplx(std::cos(ang), std::sin(ang));
    }
    // Exponent of omega at each off-diagonal block entry; -1 marks a zero
    // entry and -2 marks a one. Upper blocks at offset d carry
    // [[2d-1, 2d], [2d, 2d-1]]; lower blocks are their reflections.
    const int grid[8][8] = {
        {-1, -2, 1, 2, 3, 4, 5, 6},  //
        {-2, -1, 2, 1, 4, 3, 6, 5},  //
        {6, 5, -1, -2, 1, 2, 3, 4},  //
        {5, 6, -2, -1, 2, 1, 4, 3},  //
        {4, 3, 6, 5, -1, -2, 1, 2},  //
        {3, 4, 5, 6, -2, -1, 2, 1},  //
        {2, 1, 4, 3, 6, 5, -1, -2},  //
        {1, 2, 3, 4, 5, 6, -2, -1},  //
    };
    const HermitianMatrix a = qwmix::even_clique_signing(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const cplx want = grid[i][j] == -1   ? cplx(0.0, 0.0)
                          : grid[i][j] == -2 ? cplx(1.0, 0.0)
                                             : pw[static_cast<std::size_t>(grid[i][j])];
        REQUIRE(std::abs(a.at(i, j) - want) <= 1e-12);
      }
    REQUIRE(max_row_sum(a) <= 1e-9);
  }

  SECTION("zero stays a simple eigenvalue through order sixteen") {
    for (std::size_t n = 3; n <= 16; ++n) {
      const HermitianMatrix a =
          (n % 2 == 1) ? qwmix::odd_clique_signing(n) : qwmix::even_clique_signing(n);
      const auto sd = qwmix::eigh(a);
      bool zero_simple = false;
      for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r)
        if (std::abs(sd.eigenvalues[r]) <= 1e-8 * std::max(1.0, sd.source_norm))
          zero_simple = sd.multiplicities[r] == 1;
      REQUIRE(zero_simple);
    }
  }

  SECTION("parity is enforced") {
    expect_error(ErrorCode::NotOdd, [] { qwmix::odd_clique_signing(4); });
    expect_error(ErrorCode::NotEven, [] { qwmix::even_clique_signing(5); });
  }
}

TEST_CASE("chiral signing of the complete graph on four vertices") {
  const HermitianMatrix a = qwmix::k4_chiral_signing();
  REQUIRE(a.n() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        REQUIRE(a.at(i, j) == cplx(0.0, 0.0));
      else
        REQUIRE(std::abs(std::abs(a.at(i, j)) - 1.0) <= 1e-15);
    }

  const std::vector<double> eigs = sorted_spectrum(a);
  const double root3 = std::sqrt(3.0);
  REQUIRE(std::abs(eigs[0] + root3) <= 1e-12);
  REQUIRE(std::abs(eigs[1] + root3) <= 1e-12);
  REQUIRE(std::abs(eigs[2] - root3) <= 1e-12);
  REQUIRE(std::abs(eigs[3] - root3) <= 1e-12);
}

TEST_CASE("transitive tournaments") {
  const HermitianMatrix t3 = qwmix::transitive_tournament(3);
  REQUIRE(t3.at(0, 1) == cplx(0.0, -1.0));
  REQUIRE(t3.at(0, 2) == cplx(0.0, -1.0));
  REQUIRE(t3.at(1, 2) == cplx(0.0, -1.0));
  REQUIRE(t3.at(2, 0) == cplx(0.0, 1.0));

  SECTION("spectrum is the frozen cotangent family") {
    const std::size_t n = 5;
    std::vector<double> expected;
    for (std::size_t j = 0; j < n; ++j)
      expected.push_back(1.0 / std::tan((2.0 * static_cast<double>(j) + 1.0) *
                                        std::numbers::pi / (2.0 * static_cast<double>(n))));
    std::sort(expected.begin(), expected.end());
    const std::vector<double> got = sorted_spectrum(qwmix::transitive_tournament(n));
    for (std::size_t j = 0; j < n; ++j) REQUIRE(std::abs(got[j] - expected[j]) <= 1e-9);
  }
}

TEST_CASE("cones") {
  SECTION("cone over isolated vertices is the star") {
    REQUIRE(matrix_distance(qwmix::cone_over(qwmix::empty_graph(3)), qwmix::claw(3)) == 0.0);
  }

  SECTION("scaled cone divides every entry by the base order") {
    const HermitianMatrix c = qwmix::cone_over(qwmix::odd_clique_signing(3), true);
    REQUIRE(std::abs(c.at(0, 1) - cplx(1.0 / 3.0, 0.0)) <= 1e-15);
    REQUIRE(std::abs(c.at(1, 2) - cplx(0.0, -1.0 / 3.0)) <= 1e-15);
  }

  SECTION("base rows must sum to zero") {
    expect_error(ErrorCode::AllOnesNotKernel, [] { qwmix::cone_over(qwmix::complete(3)); });
  }

  SECTION("base zero eigenvalue must be simple") {
    // Two disjoint oriented triangles: row sums vanish but the kernel is
    // two-dimensional.
    const HermitianMatrix t = qwmix::odd_clique_signing(3);
    ComplexMatrix two(6, 6);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        two.at(i, j) = t.at(i, j);
        two.at(i + 3, j + 3) = t.at(i, j);
      }
    expect_error(ErrorCode::ZeroNotSimple,
                 [&] { qwmix::cone_over(qwmix::hermitize(two)); });
  }
}

TEST_CASE("cartesian products and hamming graphs") {
  const HermitianMatrix k2 = qwmix::complete(2);
  const HermitianMatrix square = qwmix::cartesian_product(k2, k2);
  REQUIRE(matrix_distance(square, qwmix::hamming(2, 2)) == 0.0);

  const std::vector<double> eigs = sorted_spectrum(square);
  REQUIRE(std::abs(eigs[0] + 2.0) <= 1e-12);
  REQUIRE(std::abs(eigs[1]) <= 1e-12);
  REQUIRE(std::abs(eigs[2]) <= 1e-12);
  REQUIRE(std::abs(eigs[3] - 2.0) <= 1e-12);

  SECTION("hamming degree is copies * (alphabet - 1)") {
    const HermitianMatrix h23 = qwmix::hamming(2, 3);
    REQUIRE(h23.n() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
      double deg = 0.0;
      for (std::size_t j = 0; j < 9; ++j) deg += std::abs(h23.at(i, j));
      REQUIRE(std::abs(deg - 4.0) <= 1e-12);
    }
  }

  SECTION("chiral signing needs alphabet four") {
    expect_error(ErrorCode::SigningRequiresD4, [] { qwmix::hamming(2, 3, true); });
  }
}

TEST_CASE("explicit edge lists") {
  const qwmix::EdgeList triangle = {{0, 1}, {1, 2}, {0, 2}};
  REQUIRE(matrix_distance(qwmix::adjacency_from_edges(3, triangle),
                          qwmix::complete(3)) == 0.0);

  SECTION("loops and duplicates are rejected") {
    expect_error(ErrorCode::BadInput, [] { qwmix::adjacency_from_edges(3, {{0, 0}}); });
    expect_error(ErrorCode::BadInput,
                 [] { qwmix::adjacency_from_edges(3, {{0, 1}, {1, 0}}); });
    expect_error(ErrorCode::IndexOutOfRange,
                 [] { qwmix::adjacency_from_edges(3, {{0, 5}}); });
  }

  SECTION("eulerian orientation balances every vertex") {
    const HermitianMatrix o = qwmix::eulerian_orientation_signing(3, triangle);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) REQUIRE(std::abs(o.at(i, j).imag()) == 1.0);
    REQUIRE(max_row_sum(o) <= 1e-12);
  }

  SECTION("odd degrees cannot be oriented this way") {
    expect_error(ErrorCode::NotEulerian,
                 [] { qwmix::eulerian_orientation_signing(3, {{0, 1}, {1, 2}}); });
  }

  SECTION("disconnected even-degree graphs are rejected") {
    qwmix::EdgeList two_triangles = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    expect_error(ErrorCode::Disconnected,
                 [&] { qwmix::eulerian_orientation_signing(6, two_triangles); });
  }
}

TEST_CASE("cayley graphs") {
  // Symmetric group on three letters in the order e, (12), (13), (23),
  // (123), (132); entry [a][b] is a composed with b.
  const std::vector<std::vector<std::size_t>> s3 = {
      {0, 1, 2, 3, 4, 5}, {1, 0, 5, 4, 3, 2}, {2, 4, 0, 5, 1, 3},
      {3, 5, 4, 0, 2, 1}, {4, 2, 3, 1, 5, 0}, {5, 3, 1, 2, 0, 4}};

  const HermitianMatrix g = qwmix::cayley_graph(s3, {1, 2, 3});
  REQUIRE(g.n() == 6);
  for (std::size_t v = 0; v < 6; ++v) {
    double deg = 0.0;
    for (std::size_t u = 0; u < 6; ++u) {
      REQUIRE((g.at(v, u) == cplx(0.0, 0.0) || g.at(v, u) == cplx(1.0, 0.0)));
      deg += g.at(v, u).real();
    }
    REQUIRE(deg == 3.0);
  }
  // e is adjacent to exactly the three transpositions.
  REQUIRE(g.at(0, 1) == cplx(1.0, 0.0));
  REQUIRE(g.at(0, 4) == cplx(0.0, 0.0));

  SECTION("connection set must avoid the identity and close under inverses") {
    expect_error(ErrorCode::ConnectionContainsIdentity,
                 [&] { qwmix::cayley_graph(s3, {0, 1}); });
    expect_error(ErrorCode::ConnectionNotInverseClosed,
                 [&] { qwmix::cayley_graph(s3, {4}); });
  }

  SECTION("broken multiplication tables are rejected") {
    auto bad = s3;
    bad[5][4] = 1;  // associativity breaks
    expect_error(ErrorCode::InvalidGroupTable, [&] { qwmix::cayley_graph(bad, {1, 2, 3}); });
    auto no_inverse = s3;
    no_inverse[1][1] = 1;  // row 1 no longer reaches the identity
    expect_error(ErrorCode::InvalidGroupTable,
                 [&] { qwmix::cayley_graph(no_inverse, {1, 2, 3}); });
  }
}

TEST_CASE("graph spec dispatch") {
  qwmix::GraphSpec spec;
  spec.kind = "complete";
  spec.n = 3;
  REQUIRE((qwmix::build_graph(spec) - qwmix::complete(3).matrix()).max_abs() == 0.0);

  SECTION("cartesian power folds") {
    spec.power = 2;
    REQUIRE(qwmix::build_graph(spec).rows() == 9);
  }

  SECTION("cone wrapping") {
    qwmix::GraphSpec cone;
    cone.kind = "empty";
    cone.n = 3;
    cone.cone = true;
    REQUIRE((qwmix::build_graph(cone) - qwmix::claw(3).matrix()).max_abs() == 0.0);
  }

  SECTION("scaled without cone is rejected") {
    qwmix::GraphSpec bad;
    bad.kind = "empty";
    bad.n = 3;
    bad.scaled = true;
    expect_error(ErrorCode::BadInput, [&] { qwmix::build_graph(bad); });
  }

  SECTION("unknown kind is rejected") {
    qwmix::GraphSpec bad;
    bad.kind = "torus";
    bad.n = 3;
    expect_error(ErrorCode::BadInput, [&] { qwmix::build_graph(bad); });
  }

  SECTION("unknown signing is rejected") {
    qwmix::GraphSpec bad;
    bad.kind = "complete";
    bad.n = 4;
    bad.signing = "random";
    expect_error(ErrorCode::BadInput, [&] { qwmix::build_graph(bad); });
  }
}
