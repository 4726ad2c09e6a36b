#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qwmix/catalog.hpp"
#include "qwmix/graphs.hpp"
#include "qwmix/json_io.hpp"
#include "qwmix/measured.hpp"
#include "qwmix/mixing.hpp"
#include "qwmix/quotient.hpp"

namespace qwmix {

// One comparison inside a criterion. Informational lines (recorded, never
// asserted) carry pass = true and tolerance 0.
struct CheckLine {
  std::string what;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::vector<CheckLine> checks;

  void expect_le(const std::string& what, double measured, double bound) {
    const bool ok = measured <= bound;
    checks.push_back({what, measured, bound, bound, ok});
    pass = pass && ok;
  }
  void expect_gt(const std::string& what, double measured, double bound) {
    const bool ok = measured > bound;
    checks.push_back({what, measured, bound, bound, ok});
    pass = pass && ok;
  }
  void expect_near(const std::string& what, double measured, double expected,
                   double tol) {
    const bool ok = std::abs(measured - expected) <= tol;
    checks.push_back({what, measured, expected, tol, ok});
    pass = pass && ok;
  }
  void expect_true(const std::string& what, bool ok) {
    checks.push_back({what, ok ? 1.0 : 0.0, 1.0, 0.0, ok});
    pass = pass && ok;
  }
  void record(const std::string& what, double measured, double reference) {
    checks.push_back({what, measured, reference, 0.0, true});
  }
};

namespace acceptance {

inline HermitianMatrix built(const GraphSpec& g) { return hermitize(build_graph(g)); }

inline GraphSpec spec_of(const char* kind, std::size_t n, const char* signing = "") {
  GraphSpec g;
  g.kind = kind;
  g.n = n;
  g.signing = signing;
  return g;
}

inline CriterionResult closed_form_uniform_times() {
  CriterionResult c;
  c.id = 1;
  c.name = "closed-form uniform mixing times";
  const double pi = std::numbers::pi;
  struct Row {
    const char* label;
    GraphSpec g;
    double t;
  };
  std::vector<Row> rows = {
      {"K2", spec_of("complete", 2), pi / 4.0},
      {"K3", spec_of("complete", 3), 2.0 * pi / 9.0},
      {"K4", spec_of("complete", 4), pi / 4.0},
      {"K(1,3)", spec_of("claw", 3), 2.0 * pi / (3.0 * std::sqrt(3.0))},
      {"chiral K4", spec_of("complete", 4, "chiral"), pi / (3.0 * std::sqrt(3.0))},
  };
  for (const Row& row : rows) {
    for (std::size_t power = 1; power <= 2; ++power) {
      GraphSpec g = row.g;
      g.power = power;
      const UniformityReport u = is_uniform(mixing_matrix(built(g), row.t), 1e-9);
      const std::string label =
          std::string(row.label) + (power == 2 ? " square" : "") + " deviation";
      c.expect_le(label, u.max_deviation, 1e-9);
    }
  }
  return c;
}

inline CriterionResult chiral_k4_earliest_time() {
  CriterionResult c;
  c.id = 2;
  c.name = "earliest uniform instant of the chiral K4";
  const double target = std::numbers::pi / (3.0 * std::sqrt(3.0));
  const SearchResult s = mixing_time_search(k4_chiral_signing(), 1.0, 1e-9);
  c.expect_true("search finds a uniform instant in [0, 1]", s.time.has_value());
  if (s.time) {
    c.expect_near("found instant vs pi/(3 sqrt 3)", *s.time, target, 1e-9);
    GraphSpec big;
    big.kind = "hamming";
    big.n = 2;
    big.d = 4;
    big.signing = "chiral";
    const UniformityReport u = is_uniform(mixing_matrix(built(big), *s.time), 1e-8);
    c.expect_le("chiral K4 square deviation at the found instant", u.max_deviation, 1e-8);
  }
  return c;
}

inline CriterionResult large_cliques_never_uniform() {
  CriterionResult c;
  c.id = 3;
  c.name = "large cliques never mix uniformly";
  for (std::size_t n = 5; n <= 8; ++n) {
    const SearchResult s = mixing_time_search(complete(n), 20.0, 1e-9);
    c.expect_true("K" + std::to_string(n) + " search over [0, 20] finds nothing",
                  !s.time.has_value());
    c.record("K" + std::to_string(n) + " smallest deviation (recorded, expect > 1e-3)",
             s.min_deviation, 1e-3);
  }
  return c;
}

inline CriterionResult cone_closed_forms() {
  CriterionResult c;
  c.id = 4;
  c.name = "cone walk closed forms";
  for (std::size_t n = 3; n <= 8; ++n) {
    struct Base {
      std::string label;
      HermitianMatrix m;
    };
    std::vector<Base> bases;
    bases.push_back({"zeros(" + std::to_string(n) + ")", empty_graph(n)});
    if (n % 2 == 1)
      bases.push_back({"odd signed K" + std::to_string(n), odd_clique_signing(n)});
    else
      bases.push_back({"even signed K" + std::to_string(n), even_clique_signing(n)});
    for (const Base& base : bases) {
      const HermitianMatrix cone = cone_over(base.m);
      const double t0 = cone_times(n).t0;
      const UniformityReport u = is_local_uniform(mixing_matrix(cone, t0), 0, 1e-8);
      c.expect_le("cone over " + base.label + ": apex column deviation at t0",
                  u.max_deviation, 1e-8);
      SplitMix64 rng = SplitMix64::stream(404, n * 2 + (base.label[0] == 'z' ? 0 : 1));
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const double t = rng.next_double() * 2.0 * std::numbers::pi;
        const std::size_t v = 1 + static_cast<std::size_t>(rng.next() % n);
        const cplx amp = cone_hit_amplitude(cone, v, t);
        worst = std::max(worst, std::abs(amp - cone_hit_formula(n, t)));
      }
      c.expect_le("cone over " + base.label + ": apex amplitude vs closed form",
                  worst, 1e-8);
    }
  }
  return c;
}

inline CriterionResult restart_stopping_rule_statistics() {
  CriterionResult c;
  c.id = 5;
  c.name = "restart stopping rule statistics";
  constexpr std::size_t kTrials = 10000;
  for (std::size_t n : {std::size_t{3}, std::size_t{5}, std::size_t{7}}) {
    const HermitianMatrix cone = cone_over(empty_graph(n));
    StoppingRuleConfig cfg =
        make_stopping_config(cone, 1, Strategy::restart, 20260818 + n);
    const RunStats stats = monte_carlo(cfg, kTrials);
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const double sigma_rounds =
        std::sqrt(static_cast<double>(n * n - n)) / std::sqrt(double(kTrials));
    c.expect_true(tag + "every trial hits", stats.hits == stats.trials);
    c.expect_near(tag + "mean rounds to hit", stats.mean_rounds_to_hit,
                  static_cast<double>(n), 3.0 * sigma_rounds);
    c.expect_le(tag + "settled-state deviation from uniform",
                stats.max_final_deviation, 1e-8);
    const ConeTimes times = cone_times(n);
    c.expect_near(tag + "mean total walk time", stats.mean_time_to_hit,
                  static_cast<double>(n) * times.t1 + times.t0,
                  3.0 * times.t1 * sigma_rounds);
  }
  return c;
}

inline CriterionResult signed_clique_constructions() {
  CriterionResult c;
  c.id = 6;
  c.name = "signed clique constructions";
  for (std::size_t n = 3; n <= 16; ++n) {
    const HermitianMatrix a =
        (n % 2 == 1) ? odd_clique_signing(n) : even_clique_signing(n);
    const std::string tag =
        std::string(n % 2 == 1 ? "odd" : "even") + " signing n=" + std::to_string(n);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        asym = std::max(asym, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
    c.expect_le(tag + ": storage asymmetry", asym, 0.0);
    double row = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx s(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) s += a.at(i, j);
      row = std::max(row, std::abs(s));
    }
    c.expect_le(tag + ": worst row sum", row, 1e-9);
    const SpectralDecomposition sd = eigh(a);
    const double group_tol = 1e-8 * std::max(1.0, sd.source_norm);
    bool zero_simple = false;
    for (std::size_t r = 0; r < sd.eigenvalues.size(); ++r)
      if (std::abs(sd.eigenvalues[r]) <= group_tol)
        zero_simple = sd.multiplicities[r] == 1;
    c.expect_true(tag + ": zero eigenvalue simple", zero_simple);
  }
  return c;
}

inline CriterionResult average_mixing_oracle_agreement() {
  CriterionResult c;
  c.id = 7;
  c.name = "average mixing matches its time-average oracle";
  std::set<std::string> seen;
  for (const CatalogEntry& e : catalog()) {
    const std::string key = graph_spec_to_json(e.graph_spec).dump();
    if (!seen.insert(key).second) continue;
    const ComplexMatrix m = build_graph(e.graph_spec);
    if (m.rows() > 12) continue;
    const HermitianMatrix a = hermitize(m);
    const AverageMixingMatrix exact = average_mixing(a);
    const AverageMixingMatrix approx = average_mixing_cesaro(a, 500.0, 50000);
    double diff = 0.0;
    for (std::size_t k = 0; k < exact.p.size(); ++k)
      diff = std::max(diff, std::abs(exact.p[k] - approx.p[k]));
    c.expect_le(e.name + " (order " + std::to_string(m.rows()) + ")", diff, 5e-3);
  }
  return c;
}

inline CriterionResult average_uniform_families() {
  CriterionResult c;
  c.id = 8;
  c.name = "average uniform families";
  std::vector<std::pair<std::string, GraphSpec>> graphs;
  for (std::size_t n = 5; n <= 9; n += 2)
    graphs.push_back({"oriented C" + std::to_string(n), spec_of("cycle", n, "oriented")});
  for (std::size_t n = 2; n <= 8; ++n)
    graphs.push_back(
        {"tournament n=" + std::to_string(n), spec_of("complete", n, "tournament")});
  for (const auto& [label, g] : graphs) {
    const HermitianMatrix a = built(g);
    const AverageMixingMatrix avg = average_mixing(a);
    const UniformityReport u = average_uniformity(avg, 1e-9);
    c.expect_le(label + ": average deviation from 1/n", u.max_deviation, 1e-9);
    c.expect_near(label + ": average mixing trace", avg.trace(), 1.0, 1e-8);
  }
  const HermitianMatrix k3 = complete(3);
  const double bound = trace_lower_bound(eigh(k3));
  const double trace = average_mixing(k3).trace();
  c.expect_near("K3: trace bound value", bound, 5.0 / 3.0, 1e-12);
  c.expect_near("K3: average mixing trace meets the bound", trace, bound, 1e-8);
  return c;
}

inline CriterionResult average_mixing_negatives() {
  CriterionResult c;
  c.id = 9;
  c.name = "average mixing negatives";
  std::vector<std::pair<std::string, GraphSpec>> negatives = {
      {"P3", spec_of("path", 3)},
      {"K3", spec_of("complete", 3)},
      {"P4", spec_of("path", 4)},
      {"K(1,3)", spec_of("claw", 3)},
      {"C4", spec_of("cycle", 4)},
      {"K4", spec_of("complete", 4)},
  };
  {
    GraphSpec paw;
    paw.kind = "explicit";
    paw.n = 4;
    paw.edges = {{0, 1}, {0, 2}, {1, 2}, {0, 3}};
    negatives.push_back({"paw", paw});
    GraphSpec diamond;
    diamond.kind = "explicit";
    diamond.n = 4;
    diamond.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    negatives.push_back({"diamond", diamond});
  }
  for (const auto& [label, g] : negatives) {
    const UniformityReport u = has_average_uniform(built(g), 1e-9);
    c.expect_gt(label + ": average deviation stays away from 1/n", u.max_deviation, 1e-3);
  }
  const HermitianMatrix s3 = cayley_graph(s3_table(), {1, 2, 3});
  c.expect_gt("S3 transposition Cayley graph: average deviation",
              has_average_uniform(s3, 1e-9).max_deviation, 1e-3);
  c.expect_le("K2: average deviation vanishes",
              has_average_uniform(complete(2), 1e-9).max_deviation, 1e-9);
  return c;
}

inline CriterionResult equitable_quotient_identities() {
  CriterionResult c;
  c.id = 10;
  c.name = "equitable quotient identities";
  struct Case {
    std::string label;
    HermitianMatrix a;
  };
  std::vector<Case> cases;
  cases.push_back({"K(1,3)", claw(3)});
  cases.push_back({"cone over oriented triangle", cone_over(oriented_cycle(3))});
  const Partition cells = {{0}, {1, 2, 3}};
  for (const Case& k : cases) {
    const EquitablePartition ep = verify_equitable(k.a, cells);
    const std::size_t m = cells.size();
    const double orth =
        (ep.s.adjoint() * ep.s - ComplexMatrix::identity(m)).max_abs();
    c.expect_le(k.label + ": characteristic columns orthonormal", orth, 1e-9);
    const ComplexMatrix proj = ep.s * ep.s.adjoint();
    const double comm = (proj * k.a.matrix() - k.a.matrix() * proj).max_abs();
    c.expect_le(k.label + ": cell projector commutes with adjacency", comm, 1e-9);
    const HermitianMatrix b = quotient_matrix(ep, k.a);
    double closed_dev = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) {
        const double ratio = std::sqrt(static_cast<double>(cells[j].size()) /
                                       static_cast<double>(cells[l].size()));
        closed_dev = std::max(closed_dev,
                              std::abs(b.at(j, l) - ep.row_sums.at(j, l) * ratio));
      }
    c.expect_le(k.label + ": quotient matches row-sum closed form", closed_dev, 1e-9);
    SplitMix64 rng = SplitMix64::stream(1010, k.label.size());
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
      worst = std::max(worst, quotient_walk_check(ep, k.a, rng.next_double() * 10.0));
    c.expect_le(k.label + ": quotient walk intertwines (20 random times)", worst, 1e-8);
  }
  return c;
}

inline ComplexMatrix relabel(const ComplexMatrix& a, const std::vector<std::size_t>& p) {
  ComplexMatrix b(a.rows(), a.cols());
  for (std::size_t u = 0; u < a.rows(); ++u)
    for (std::size_t v = 0; v < a.cols(); ++v) b.at(p[u], p[v]) = a.at(u, v);
  return b;
}

inline CriterionResult switching_certificates_check() {
  CriterionResult c;
  c.id = 11;
  c.name = "switching certificates";
  const HermitianMatrix chiral = k4_chiral_signing();
  const HermitianMatrix cone = cone_over(oriented_cycle(3));
  const auto cert = switching_certificate(chiral, cone);
  c.expect_true("certificate found for the oriented pair", cert.has_value());
  if (cert) {
    const std::vector<cplx> pinned = {cplx(0.0, -1.0), cplx(1.0, 0.0), cplx(1.0, 0.0),
                                      cplx(1.0, 0.0)};
    const cplx ratio0 = cert->diag[0] / pinned[0];
    double dev = 0.0;
    for (std::size_t v = 1; v < 4; ++v)
      dev = std::max(dev, std::abs(cert->diag[v] / pinned[v] - ratio0));
    c.expect_le("diagonal equals diag(-i, 1, 1, 1) up to a global phase", dev, 1e-9);
  }
  SplitMix64 rng = SplitMix64::stream(1111, 0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    worst = std::max(worst, mixing_distance(chiral, cone, rng.next_double() * 10.0));
  c.expect_le("mixing matrices of the pair agree (20 random times)", worst, 1e-9);

  for (std::size_t w = 0; w < 4; ++w) {
    bool found = false;
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < 4; ++v)
      if (v != w) rest.push_back(v);
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<std::size_t> p(4);
      p[0] = w;
      for (std::size_t i = 0; i < 3; ++i) p[i + 1] = rest[i];
      const HermitianMatrix moved = hermitize(relabel(cone.matrix(), p));
      if (switching_certificate(moved, chiral).has_value()) {
        found = true;
        break;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
    c.expect_true("apex relabeled to vertex " + std::to_string(w) +
                      " still matches the chiral K4",
                  found);
  }
  return c;
}

inline CriterionResult missed_measurement_interference() {
  CriterionResult c;
  c.id = 12;
  c.name = "interference after a missed measurement";
  const std::size_t n = 3;
  const HermitianMatrix cone = cone_over(empty_graph(n));
  const ConeTimes times = cone_times(n);
  constexpr std::size_t kTrials = 10000;

  auto tail_rate = [](const RunStats& s) {
    double attempts = 0.0, hits = 0.0;
    for (std::size_t r = 1; r < s.round_attempts.size(); ++r) {
      attempts += static_cast<double>(s.round_attempts[r]);
      hits += static_cast<double>(s.round_hits[r]);
    }
    return attempts > 0.0 ? hits / attempts : 0.0;
  };
  auto tail_prob = [](const std::vector<double>& probs) {
    double worst = 0.0;
    for (std::size_t r = 1; r < probs.size(); ++r) worst = std::max(worst, probs[r]);
    return worst;
  };

  StoppingRuleConfig cfg = make_stopping_config(cone, 1, Strategy::keep_going, 555777);
  cfg.max_rounds = 50;
  const RunStats tuned = monte_carlo(cfg, kTrials);
  c.expect_le("tuned interval: empirical hit rate after the first miss",
              tail_rate(tuned), 1e-6);
  c.expect_le("tuned interval: analytic hit probability after the first miss",
              tail_prob(deterministic_round_probs(cfg, 50)), 1e-6);

  cfg.measure_interval = 0.6 * times.t1;
  const RunStats detuned = monte_carlo(cfg, kTrials);
  c.expect_gt("detuned interval: empirical hit rate after the first miss",
              tail_rate(detuned), 1e-3);
  c.expect_gt("detuned interval: analytic hit probability after the first miss",
              tail_prob(deterministic_round_probs(cfg, 50)), 1e-3);
  return c;
}

}  // namespace acceptance

inline std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> all;
  all.push_back(acceptance::closed_form_uniform_times());
  all.push_back(acceptance::chiral_k4_earliest_time());
  all.push_back(acceptance::large_cliques_never_uniform());
  all.push_back(acceptance::cone_closed_forms());
  all.push_back(acceptance::restart_stopping_rule_statistics());
  all.push_back(acceptance::signed_clique_constructions());
  all.push_back(acceptance::average_mixing_oracle_agreement());
  all.push_back(acceptance::average_uniform_families());
  all.push_back(acceptance::average_mixing_negatives());
  all.push_back(acceptance::equitable_quotient_identities());
  all.push_back(acceptance::switching_certificates_check());
  all.push_back(acceptance::missed_measurement_interference());
  return all;
}

inline json criterion_to_json(const CriterionResult& c) {
  json checks = json::array();
  for (const CheckLine& line : c.checks)
    checks.push_back(json{{"what", line.what},
                          {"measured", line.measured},
                          {"expected", line.expected},
                          {"tolerance", line.tolerance},
                          {"pass", line.pass}});
  return json{{"criterion", c.id}, {"name", c.name}, {"pass", c.pass}, {"checks", checks}};
}

}  // namespace qwmix
