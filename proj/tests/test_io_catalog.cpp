#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "qwmix/catalog.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graphs.hpp"
#include "qwmix/json_io.hpp"

using qwmix::cplx;
using qwmix::Error;
using qwmix::ErrorCode;
using qwmix::json;

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

TEST_CASE("input digests are frozen") {
  REQUIRE(qwmix::fnv1a_digest("") == "cbf29ce484222325");
  REQUIRE(qwmix::fnv1a_digest("a") == "af63dc4c8601ec8c");
  REQUIRE(qwmix::fnv1a_digest("foobar") == "85944171f73967e8");
}

TEST_CASE("matrix serialization round-trips bit-exactly") {
  const qwmix::HermitianMatrix a = qwmix::transitive_tournament(4);
  const json j = qwmix::matrix_to_json(a.matrix());
  const qwmix::ComplexMatrix back = qwmix::matrix_from_json(j);
  REQUIRE((back - a.matrix()).max_abs() == 0.0);

  // Through text as well: doubles must survive printing.
  const json reparsed = json::parse(j.dump());
  REQUIRE((qwmix::matrix_from_json(reparsed) - a.matrix()).max_abs() == 0.0);

  SECTION("irrational entries survive the text round-trip") {
    const qwmix::HermitianMatrix e = qwmix::even_clique_signing(8);
    const json je = qwmix::matrix_to_json(e.matrix());
    const qwmix::ComplexMatrix eback = qwmix::matrix_from_json(json::parse(je.dump()));
    REQUIRE((eback - e.matrix()).max_abs() == 0.0);
  }

  SECTION("malformed matrices are rejected with context") {
    expect_error(ErrorCode::BadInput, [] { qwmix::matrix_from_json(json::array()); });
    expect_error(ErrorCode::BadInput,
                 [] { qwmix::matrix_from_json(json{{"n", 2}, {"entries", {1, 2, 3}}}); });
    expect_error(ErrorCode::BadInput, [] {
      qwmix::matrix_from_json(json{{"n", 0}, {"entries", json::array()}});
    });
    try {
      qwmix::matrix_from_json(
          json{{"n", 2}, {"entries", {{0, 0}, {1, 0}, {1, 0}, {"x", 0}}}});
      FAIL("expected an error");
    } catch (const Error& e) {
      REQUIRE(std::string(e.what()).find("entry") != std::string::npos);
    }
  }
}

TEST_CASE("graph specs round-trip through JSON") {
  qwmix::GraphSpec spec;
  spec.kind = "cayley";
  spec.n = 6;
  spec.table = qwmix::s3_table();
  spec.connection = {1, 2, 3};
  spec.power = 2;

  const json j = qwmix::graph_spec_to_json(spec);
  const qwmix::GraphSpec back = qwmix::graph_spec_from_json(j);
  REQUIRE(back.kind == spec.kind);
  REQUIRE(back.n == spec.n);
  REQUIRE(back.table == spec.table);
  REQUIRE(back.connection == spec.connection);
  REQUIRE(back.power == 2);
  REQUIRE((qwmix::build_graph(back) - qwmix::build_graph(spec)).max_abs() == 0.0);

  SECTION("cone flags round-trip") {
    qwmix::GraphSpec cone;
    cone.kind = "cycle";
    cone.n = 3;
    cone.signing = "oriented";
    cone.cone = true;
    cone.scaled = true;
    const qwmix::GraphSpec cback =
        qwmix::graph_spec_from_json(qwmix::graph_spec_to_json(cone));
    REQUIRE(cback.cone);
    REQUIRE(cback.scaled);
    REQUIRE(cback.signing == "oriented");
  }

  SECTION("unknown fields are rejected") {
    json bad = qwmix::graph_spec_to_json(spec);
    bad["flavor"] = "strawberry";
    expect_error(ErrorCode::BadInput, [&] { qwmix::graph_spec_from_json(bad); });
  }
}

TEST_CASE("reports carry version and digest") {
  const json r = qwmix::make_report(json{{"x", 1}}, "foobar");
  REQUIRE(r["version"] == qwmix::kVersion);
  REQUIRE(r["input_digest"] == "85944171f73967e8");
  REQUIRE(r["x"] == 1);
}

TEST_CASE("catalog regeneration") {
  const std::vector<qwmix::CatalogEntry> entries = qwmix::catalog();
  REQUIRE(entries.size() >= 30);

  SECTION("entry names are unique") {
    std::set<std::string> names;
    for (const auto& e : entries) REQUIRE(names.insert(e.name).second);
  }

  SECTION("every cataloged claim checks out, in name order") {
    const std::vector<qwmix::CatalogResult> results = qwmix::run_catalog();
    REQUIRE(results.size() == entries.size());
    for (std::size_t i = 1; i < results.size(); ++i)
      REQUIRE(results[i - 1].name < results[i].name);
    for (const auto& r : results) {
      INFO(r.name << ": " << r.what);
      REQUIRE(r.pass);
    }
  }

  SECTION("claim labels are stable") {
    REQUIRE(std::string(qwmix::claim_name(qwmix::CatalogEntry::Claim::uniform_at)) ==
            "uniform_at");
    REQUIRE(std::string(qwmix::claim_name(qwmix::CatalogEntry::Claim::trace_equals)) ==
            "trace_equals");
  }
}
