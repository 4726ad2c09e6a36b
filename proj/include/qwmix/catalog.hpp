#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qwmix/graphs.hpp"
#include "qwmix/mixing.hpp"

namespace qwmix {

// A named, checkable statement about one graph: it mixes uniformly at a
// given time, never does below a horizon, has a uniform or non-uniform
// time average, or has a pinned average-mixing trace.
struct CatalogEntry {
  enum class Claim {
    uniform_at,        // expected_value is the time
    local_uniform_at,  // expected_value is the time, vertex names the start
    no_uniform_up_to,  // expected_value is the search horizon
    avg_uniform,       // expected_value 1 demands uniform, 0 demands non-uniform
    trace_equals,      // expected_value is the average-mixing trace
  };

  std::string name;
  GraphSpec graph_spec;
  Claim claim;
  double expected_value = 0.0;
  std::size_t vertex = 0;  // local_uniform_at only
  std::string source;
};

struct CatalogResult {
  std::string name;
  std::string claim;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string what;
};

inline const char* claim_name(CatalogEntry::Claim c) {
  switch (c) {
    case CatalogEntry::Claim::uniform_at: return "uniform_at";
    case CatalogEntry::Claim::local_uniform_at: return "local_uniform_at";
    case CatalogEntry::Claim::no_uniform_up_to: return "no_uniform_up_to";
    case CatalogEntry::Claim::avg_uniform: return "avg_uniform";
    case CatalogEntry::Claim::trace_equals: return "trace_equals";
  }
  return "unknown";
}

// Multiplication table of the symmetric group on three letters in the order
// e, (12), (13), (23), (123), (132); entry [a][b] is a composed with b.
inline std::vector<std::vector<std::size_t>> s3_table() {
  return {{0, 1, 2, 3, 4, 5}, {1, 0, 5, 4, 3, 2}, {2, 4, 0, 5, 1, 3},
          {3, 5, 4, 0, 2, 1}, {4, 2, 3, 1, 5, 0}, {5, 3, 1, 2, 0, 4}};
}

inline std::vector<CatalogEntry> catalog() {
  using Claim = CatalogEntry::Claim;
  const double pi = std::numbers::pi;
  const double t_star = 2.0 * pi / (3.0 * std::sqrt(3.0));
  const double t_chiral = pi / (3.0 * std::sqrt(3.0));

  std::vector<CatalogEntry> list;
  auto add = [&](std::string name, GraphSpec g, Claim c, double v, std::string src,
                 std::size_t vertex = 0) {
    CatalogEntry e;
    e.name = std::move(name);
    e.graph_spec = std::move(g);
    e.claim = c;
    e.expected_value = v;
    e.vertex = vertex;
    e.source = std::move(src);
    list.push_back(std::move(e));
  };
  auto hamming_spec = [](std::size_t copies, std::size_t d, bool chiral) {
    GraphSpec g;
    g.kind = "hamming";
    g.n = copies;
    g.d = d;
    if (chiral) g.signing = "chiral";
    return g;
  };
  auto simple_spec = [](const char* kind, std::size_t n, const char* signing = "") {
    GraphSpec g;
    g.kind = kind;
    g.n = n;
    g.signing = signing;
    return g;
  };
  auto edges_spec = [](std::size_t n, EdgeList edges) {
    GraphSpec g;
    g.kind = "explicit";
    g.n = n;
    g.edges = std::move(edges);
    return g;
  };

  for (std::size_t copies = 1; copies <= 2; ++copies) {
    const std::string suffix = "(" + std::to_string(copies) + ",";
    add("H" + suffix + "2) uniform", hamming_spec(copies, 2, false), Claim::uniform_at,
        pi / 4.0, "hypercube walk, quarter period");
    add("H" + suffix + "3) uniform", hamming_spec(copies, 3, false), Claim::uniform_at,
        2.0 * pi / 9.0, "ternary Hamming walk");
    add("H" + suffix + "4) uniform", hamming_spec(copies, 4, false), Claim::uniform_at,
        pi / 4.0, "quaternary Hamming walk");
  }
  {
    GraphSpec star = simple_spec("claw", 3);
    add("K(1,3) uniform", star, Claim::uniform_at, t_star, "star on four vertices");
    star.power = 2;
    add("K(1,3) square uniform", star, Claim::uniform_at, t_star,
        "Cartesian square of the star");
  }
  add("chiral K4 uniform", simple_spec("complete", 4, "chiral"), Claim::uniform_at,
      t_chiral, "oriented clique, earliest uniform instant");
  add("chiral K4 square uniform", hamming_spec(2, 4, true), Claim::uniform_at, t_chiral,
      "Cartesian square of the oriented clique");
  {
    GraphSpec cone = simple_spec("cycle", 3, "oriented");
    cone.cone = true;
    add("cone over oriented triangle locally uniform", cone, Claim::local_uniform_at,
        t_chiral, "conical vertex spreads uniformly", 0);
  }
  for (std::size_t n = 5; n <= 8; ++n)
    add("K" + std::to_string(n) + " no uniform up to 20", simple_spec("complete", n),
        Claim::no_uniform_up_to, 20.0, "large cliques never mix uniformly");

  add("K2 average uniform", simple_spec("complete", 2), Claim::avg_uniform, 1.0,
      "the edge averages flat");
  add("P3 average not uniform", simple_spec("path", 3), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("K3 average not uniform", simple_spec("complete", 3), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("P4 average not uniform", simple_spec("path", 4), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("K(1,3) average not uniform", simple_spec("claw", 3), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("paw average not uniform", edges_spec(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}),
      Claim::avg_uniform, 0.0, "unsigned connected graphs past K2 average unevenly");
  add("C4 average not uniform", simple_spec("cycle", 4), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("diamond average not uniform",
      edges_spec(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");
  add("K4 average not uniform", simple_spec("complete", 4), Claim::avg_uniform, 0.0,
      "unsigned connected graphs past K2 average unevenly");

  for (std::size_t n = 5; n <= 9; n += 2)
    add("oriented C" + std::to_string(n) + " average uniform",
        simple_spec("cycle", n, "oriented"), Claim::avg_uniform, 1.0,
        "oriented odd cycles average flat");
  for (std::size_t n = 2; n <= 8; ++n)
    add("transitive tournament n=" + std::to_string(n) + " average uniform",
        simple_spec("complete", n, "tournament"), Claim::avg_uniform, 1.0,
        "transitive tournaments average flat");
  {
    GraphSpec s3;
    s3.kind = "cayley";
    s3.table = s3_table();
    s3.connection = {1, 2, 3};
    add("S3 transposition Cayley average not uniform", s3, Claim::avg_uniform, 0.0,
        "non-abelian Cayley graph with repeated eigenvalues");
  }
  add("K3 average trace", simple_spec("complete", 3), Claim::trace_equals, 5.0 / 3.0,
      "triangle average mixing concentrates on the diagonal");
  return list;
}

inline CatalogResult evaluate_entry(const CatalogEntry& e) {
  using Claim = CatalogEntry::Claim;
  CatalogResult r;
  r.name = e.name;
  r.claim = claim_name(e.claim);
  r.expected = e.expected_value;
  const HermitianMatrix a = hermitize(build_graph(e.graph_spec));
  switch (e.claim) {
    case Claim::uniform_at: {
      const UniformityReport u = is_uniform(mixing_matrix(a, e.expected_value), 1e-9);
      r.pass = u.uniform;
      r.measured = u.max_deviation;
      r.tolerance = 1e-9;
      r.what = "max deviation from 1/n at the stated time";
      break;
    }
    case Claim::local_uniform_at: {
      const UniformityReport u =
          is_local_uniform(mixing_matrix(a, e.expected_value), e.vertex, 1e-9);
      r.pass = u.uniform;
      r.measured = u.max_deviation;
      r.tolerance = 1e-9;
      r.what = "max column deviation from 1/n at the stated time";
      break;
    }
    case Claim::no_uniform_up_to: {
      const SearchResult s = mixing_time_search(a, e.expected_value, 1e-9);
      r.pass = !s.time.has_value();
      r.measured = s.min_deviation;
      r.tolerance = 1e-9;
      r.what = "smallest deviation over the scanned horizon (must stay above eps)";
      break;
    }
    case Claim::avg_uniform: {
      const UniformityReport u = has_average_uniform(a, 1e-9);
      r.measured = u.max_deviation;
      if (e.expected_value >= 0.5) {
        r.pass = u.uniform;
        r.tolerance = 1e-9;
        r.what = "average mixing deviation from 1/n (must vanish)";
      } else {
        r.pass = u.max_deviation > 1e-3;
        r.tolerance = 1e-3;
        r.what = "average mixing deviation from 1/n (must stay above tolerance)";
      }
      break;
    }
    case Claim::trace_equals: {
      const double trace = average_mixing(a).trace();
      r.measured = trace;
      r.tolerance = 1e-8;
      r.pass = std::abs(trace - e.expected_value) <= 1e-8;
      r.what = "trace of the average mixing matrix";
      break;
    }
  }
  return r;
}

// Evaluates every entry, ordered by name for stable reports.
inline std::vector<CatalogResult> run_catalog() {
  std::vector<CatalogEntry> entries = catalog();
  std::sort(entries.begin(), entries.end(),
            [](const CatalogEntry& x, const CatalogEntry& y) { return x.name < y.name; });
  std::vector<CatalogResult> results;
  results.reserve(entries.size());
  for (const CatalogEntry& e : entries) results.push_back(evaluate_entry(e));
  return results;
}

}  // namespace qwmix
