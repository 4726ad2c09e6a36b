// Command-line front end: every library operation as a subcommand over JSON
// on stdin/stdout or files. Exit codes: 0 success, 1 claim-check failure,
// 2 input error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwmix/qwmix.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kClaimFail = 1;
constexpr int kInputError = 2;

struct GlobalFlags {
  std::string in_path;
  std::string out_path;
  double eps = 1e-9;
  std::uint64_t seed = 1;
  bool compact = false;
};

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) qwmix::fail(qwmix::ErrorCode::BadInput, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) qwmix::fail(qwmix::ErrorCode::BadInput, "cannot open output file: " + out_path);
  f << text;
}

void emit(const qwmix::json& report, const GlobalFlags& g) {
  write_text(g.out_path, report.dump(g.compact ? -1 : 2) + "\n");
}

qwmix::json parse_json(const std::string& text) {
  try {
    return qwmix::json::parse(text);
  } catch (const qwmix::json::parse_error& e) {
    qwmix::fail(qwmix::ErrorCode::BadInput, std::string("malformed JSON: ") + e.what());
  }
}

struct MatrixInput {
  qwmix::HermitianMatrix matrix;
  std::string text;
};

MatrixInput load_matrix(const std::string& path) {
  std::string text = read_text(path);
  const qwmix::ComplexMatrix m = qwmix::matrix_from_json(parse_json(text));
  return {qwmix::hermitize(m), std::move(text)};
}

qwmix::Partition parse_cells(const std::string& syntax, std::size_t n) {
  qwmix::Partition cells;
  std::stringstream outer(syntax);
  std::string cell_text;
  while (std::getline(outer, cell_text, '|')) {
    std::vector<std::size_t> cell;
    std::stringstream inner(cell_text);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &pos);
      } catch (const std::exception&) {
        qwmix::fail(qwmix::ErrorCode::BadInput, "cell index is not a number: " + tok);
      }
      if (pos != tok.size())
        qwmix::fail(qwmix::ErrorCode::BadInput, "cell index is not a number: " + tok);
      if (v >= n)
        qwmix::fail(qwmix::ErrorCode::IndexOutOfRange,
                    "cell index " + tok + " exceeds matrix order");
      cell.push_back(static_cast<std::size_t>(v));
    }
    if (cell.empty())
      qwmix::fail(qwmix::ErrorCode::BadInput, "empty cell in partition syntax");
    cells.push_back(std::move(cell));
  }
  if (cells.empty())
    qwmix::fail(qwmix::ErrorCode::BadInput, "empty partition syntax");
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on signed and oriented graphs: "
               "mixing matrices, uniform mixing checks, average mixing, "
               "equitable quotients, switching certificates, and measured "
               "stopping rules."};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--in", g.in_path, "Input file (default: standard input)");
  app.add_option("--out", g.out_path, "Output file (default: standard output)");
  app.add_option("--eps", g.eps, "Uniformity tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--json", g.compact, "Compact single-line JSON output");

  // build
  auto* cmd_build = app.add_subcommand(
      "build", "Build an adjacency matrix from a graph spec (JSON or flags)");
  std::string b_kind, b_signing;
  std::size_t b_n = 0, b_d = 0, b_power = 1;
  bool b_cone = false, b_scaled = false;
  cmd_build->add_option("--kind", b_kind, "Graph family (skips JSON input)");
  cmd_build->add_option("--n", b_n, "Order parameter");
  cmd_build->add_option("--d", b_d, "Secondary parameter (e.g. Hamming alphabet)");
  cmd_build->add_option("--power", b_power, "Cartesian power");
  cmd_build->add_option("--signing", b_signing, "Signing name");
  cmd_build->add_flag("--cone", b_cone, "Attach an apex joined to every vertex");
  cmd_build->add_flag("--scaled", b_scaled, "Divide cone entries by the base order");

  // mix
  auto* cmd_mix = app.add_subcommand("mix", "Mixing matrix at a fixed time");
  double m_time = 0.0;
  cmd_mix->add_option("--time", m_time, "Evolution time")->required();

  // uniform
  auto* cmd_uniform =
      app.add_subcommand("uniform", "Check uniform mixing at a fixed time");
  double u_time = 0.0;
  cmd_uniform->add_option("--time", u_time, "Evolution time")->required();

  // local-uniform
  auto* cmd_local = app.add_subcommand(
      "local-uniform", "Check uniform mixing from one start vertex");
  double l_time = 0.0;
  std::size_t l_vertex = 0;
  cmd_local->add_option("--time", l_time, "Evolution time")->required();
  cmd_local->add_option("--vertex", l_vertex, "Start vertex")->capture_default_str();

  // avg-mix
  auto* cmd_avg = app.add_subcommand("avg-mix", "Average mixing matrix");
  bool a_cesaro = false;
  double a_horizon = 500.0;
  std::size_t a_steps = 50000;
  cmd_avg->add_flag("--cesaro", a_cesaro, "Finite-horizon quadrature instead of projectors");
  cmd_avg->add_option("--horizon", a_horizon, "Quadrature horizon")->capture_default_str();
  cmd_avg->add_option("--steps", a_steps, "Quadrature steps")->capture_default_str();

  // search
  auto* cmd_search =
      app.add_subcommand("search", "Search [0, tmax] for a uniform mixing time");
  double s_tmax = 20.0;
  std::size_t s_grid = 20000;
  cmd_search->add_option("--tmax", s_tmax, "Search horizon")->capture_default_str();
  cmd_search->add_option("--grid", s_grid, "Grid points")->capture_default_str();

  // quotient
  auto* cmd_quotient =
      app.add_subcommand("quotient", "Equitable-partition quotient and residuals");
  std::string q_cells;
  cmd_quotient->add_option("--cells", q_cells, "Partition, e.g. \"0|1,2,3\"")->required();

  // switch-check
  auto* cmd_switch = app.add_subcommand(
      "switch-check", "Find a switching certificate between two matrices");
  std::string w_a, w_b;
  cmd_switch->add_option("--a", w_a, "First matrix JSON file")->required();
  cmd_switch->add_option("--b", w_b, "Second matrix JSON file")->required();

  // stopping-rule
  auto* cmd_stop = app.add_subcommand(
      "stopping-rule", "Monte Carlo over repeated apex measurements of a cone walk");
  std::string r_spec_path, r_strategy = "restart", r_trace;
  std::size_t r_start = 1, r_trials = 10000, r_max_rounds = 0;
  double r_interval = 0.0, r_settle = -1.0;
  bool r_scaled = false, r_from_cone = false;
  cmd_stop->add_option("--spec", r_spec_path, "Graph spec JSON file (default: --in)");
  cmd_stop->add_option("--start", r_start, "Base start vertex")->capture_default_str();
  cmd_stop->add_option("--strategy", r_strategy, "restart or continue")
      ->check(CLI::IsMember({"restart", "continue", "keep_going"}));
  cmd_stop->add_option("--interval", r_interval, "Measurement interval (default: tuned)");
  cmd_stop->add_option("--settle", r_settle, "Settle time after a hit (default: tuned)");
  cmd_stop->add_option("--trials", r_trials, "Trial count")->capture_default_str();
  cmd_stop->add_option("--max-rounds", r_max_rounds, "Round cap per trial (default: 100n)");
  cmd_stop->add_flag("--scaled", r_scaled, "Scale the attached cone by the base order");
  cmd_stop->add_flag("--from-cone", r_from_cone,
                     "Start at the cone vertex: skip the measurement loop and settle directly");
  cmd_stop->add_option("--trace", r_trace, "Per-measurement CSV file");

  // catalog
  auto* cmd_catalog = app.add_subcommand(
      "catalog", "Regenerate and check every cataloged example");

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "Run the acceptance battery, one JSON line per criterion");

  for (CLI::App* sub : {cmd_build, cmd_mix, cmd_uniform, cmd_local, cmd_avg,
                        cmd_search, cmd_quotient, cmd_switch, cmd_stop,
                        cmd_catalog, cmd_verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (cmd_build->parsed()) {
      qwmix::GraphSpec spec;
      std::string digest_text;
      if (!b_kind.empty()) {
        spec.kind = b_kind;
        spec.n = b_n;
        spec.d = b_d;
        spec.power = b_power;
        spec.signing = b_signing;
        spec.cone = b_cone;
        spec.scaled = b_scaled;
        digest_text = qwmix::graph_spec_to_json(spec).dump();
      } else {
        digest_text = read_text(g.in_path);
        spec = qwmix::graph_spec_from_json(parse_json(digest_text));
      }
      const qwmix::ComplexMatrix m = qwmix::build_graph(spec);
      qwmix::json payload = qwmix::matrix_to_json(m);
      payload["spec"] = qwmix::graph_spec_to_json(spec);
      emit(qwmix::make_report(std::move(payload), digest_text), g);
      return kOk;
    }

    if (cmd_mix->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::MixingMatrix m = qwmix::mixing_matrix(in.matrix, m_time);
      qwmix::json payload = qwmix::mixing_to_json(m);
      payload["uniformity"] = qwmix::uniformity_to_json(qwmix::is_uniform(m, g.eps));
      emit(qwmix::make_report(std::move(payload), in.text), g);
      return kOk;
    }

    if (cmd_uniform->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::UniformityReport r =
          qwmix::is_uniform(qwmix::mixing_matrix(in.matrix, u_time), g.eps);
      qwmix::json payload = qwmix::uniformity_to_json(r);
      payload["time"] = u_time;
      emit(qwmix::make_report(std::move(payload), in.text), g);
      return r.uniform ? kOk : kClaimFail;
    }

    if (cmd_local->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::UniformityReport r = qwmix::is_local_uniform(
          qwmix::mixing_matrix(in.matrix, l_time), l_vertex, g.eps);
      qwmix::json payload = qwmix::uniformity_to_json(r);
      payload["time"] = l_time;
      payload["vertex"] = l_vertex;
      emit(qwmix::make_report(std::move(payload), in.text), g);
      return r.uniform ? kOk : kClaimFail;
    }

    if (cmd_avg->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::AverageMixingMatrix avg =
          a_cesaro ? qwmix::average_mixing_cesaro(in.matrix, a_horizon, a_steps)
                   : qwmix::average_mixing(in.matrix);
      qwmix::json payload = qwmix::average_mixing_to_json(avg);
      payload["uniformity"] =
          qwmix::uniformity_to_json(qwmix::average_uniformity(avg, g.eps));
      emit(qwmix::make_report(std::move(payload), in.text), g);
      return kOk;
    }

    if (cmd_search->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::SearchResult r =
          qwmix::mixing_time_search(in.matrix, s_tmax, g.eps, s_grid);
      qwmix::json payload = qwmix::search_to_json(r);
      payload["tmax"] = s_tmax;
      emit(qwmix::make_report(std::move(payload), in.text), g);
      return kOk;
    }

    if (cmd_quotient->parsed()) {
      const MatrixInput in = load_matrix(g.in_path);
      const qwmix::Partition cells = parse_cells(q_cells, in.matrix.n());
      try {
        const qwmix::EquitablePartition ep = qwmix::verify_equitable(in.matrix, cells);
        const qwmix::HermitianMatrix b = qwmix::quotient_matrix(ep, in.matrix);
        const std::size_t m = cells.size();
        qwmix::json closed = qwmix::json::array();
        double closed_residual = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            const double ratio = std::sqrt(static_cast<double>(cells[j].size()) /
                                           static_cast<double>(cells[k].size()));
            const qwmix::cplx c_jk = ep.row_sums.at(j, k) * ratio;
            closed.push_back(qwmix::json::array({c_jk.real(), c_jk.imag()}));
            closed_residual = std::max(closed_residual, std::abs(b.at(j, k) - c_jk));
          }
        const double orth =
            (ep.s.adjoint() * ep.s - qwmix::ComplexMatrix::identity(m)).max_abs();
        const qwmix::ComplexMatrix proj = ep.s * ep.s.adjoint();
        const double comm =
            (proj * in.matrix.matrix() - in.matrix.matrix() * proj).max_abs();
        double intertwine = 0.0;
        qwmix::SplitMix64 rng = qwmix::SplitMix64::stream(g.seed, 0);
        for (int i = 0; i < 20; ++i)
          intertwine = std::max(
              intertwine, qwmix::quotient_walk_check(ep, in.matrix, rng.next_double() * 10.0));
        qwmix::json s_rows = qwmix::json::array();
        for (std::size_t i = 0; i < ep.s.rows(); ++i) {
          qwmix::json row = qwmix::json::array();
          for (std::size_t j = 0; j < m; ++j)
            row.push_back(qwmix::json::array(
                {ep.s.at(i, j).real(), ep.s.at(i, j).imag()}));
          s_rows.push_back(std::move(row));
        }
        qwmix::json payload{
            {"equitable", true},
            {"cells", cells},
            {"characteristic", std::move(s_rows)},
            {"quotient", qwmix::matrix_to_json(b.matrix())},
            {"row_sums", qwmix::matrix_to_json(ep.row_sums)},
            {"closed_form", std::move(closed)},
            {"residuals",
             {{"orthonormality", orth},
              {"commutator", comm},
              {"closed_form", closed_residual},
              {"intertwining_20_random_times", intertwine}}}};
        emit(qwmix::make_report(std::move(payload), in.text), g);
        return kOk;
      } catch (const qwmix::Error& e) {
        if (e.code() != qwmix::ErrorCode::NotEquitable) throw;
        qwmix::json payload{{"equitable", false}, {"what", e.what()}};
        emit(qwmix::make_report(std::move(payload), in.text), g);
        return kClaimFail;
      }
    }

    if (cmd_switch->parsed()) {
      const MatrixInput in_a = load_matrix(w_a);
      const MatrixInput in_b = load_matrix(w_b);
      const std::string joint = in_a.text + "\n" + in_b.text;
      try {
        const auto cert = qwmix::switching_certificate(in_a.matrix, in_b.matrix);
        emit(qwmix::make_report(qwmix::certificate_to_json(cert), joint), g);
        return cert ? kOk : kClaimFail;
      } catch (const qwmix::Error& e) {
        if (e.code() != qwmix::ErrorCode::SupportMismatch &&
            e.code() != qwmix::ErrorCode::DimensionMismatch)
          throw;
        qwmix::json payload{{"equivalent", false}, {"what", e.what()}};
        emit(qwmix::make_report(std::move(payload), joint), g);
        return kClaimFail;
      }
    }

    if (cmd_stop->parsed()) {
      const std::string spec_text =
          read_text(r_spec_path.empty() ? g.in_path : r_spec_path);
      const qwmix::GraphSpec spec = qwmix::graph_spec_from_json(parse_json(spec_text));
      const qwmix::HermitianMatrix built = qwmix::hermitize(qwmix::build_graph(spec));
      const qwmix::HermitianMatrix cone = qwmix::cone_over(built, r_scaled);
      const qwmix::Strategy strategy = (r_strategy == "restart")
                                           ? qwmix::Strategy::restart
                                           : qwmix::Strategy::keep_going;
      qwmix::StoppingRuleConfig cfg =
          qwmix::make_stopping_config(cone, r_start, strategy, g.seed);
      if (r_interval > 0.0) cfg.measure_interval = r_interval;
      if (r_settle >= 0.0) cfg.settle_time = r_settle;
      if (r_max_rounds > 0) cfg.max_rounds = r_max_rounds;

      qwmix::RunStats stats;
      if (r_from_cone) {
        // Walker already sits at the cone vertex, so there is nothing to
        // measure: every trial is the same settle evolution from the apex.
        const std::size_t nc = cone.n();
        const qwmix::WalkState settled = qwmix::evolve_state(
            cone, qwmix::WalkState::basis(nc, 0), cfg.settle_time);
        double dev = 0.0;
        const double target = 1.0 / static_cast<double>(nc);
        for (const qwmix::cplx& z : settled.amp)
          dev = std::max(dev, std::abs(std::norm(z) - target));
        stats.trials = r_trials;
        stats.hits = r_trials;
        stats.hit_rate = 1.0;
        stats.mean_time_to_hit = cfg.settle_time;
        stats.max_final_deviation = dev;
      } else if (r_trace.empty()) {
        stats = qwmix::monte_carlo(cfg, r_trials);
      } else {
        std::ofstream csv(r_trace);
        if (!csv)
          qwmix::fail(qwmix::ErrorCode::BadInput, "cannot open trace file: " + r_trace);
        csv << "trial,round,outcome,p_hit\n" << std::setprecision(17);
        stats = qwmix::monte_carlo(
            cfg, r_trials, [&](std::size_t trial, std::size_t round, bool hit, double p) {
              csv << trial << ',' << round << ',' << (hit ? "hit" : "miss") << ',' << p
                  << '\n';
            });
      }
      qwmix::json payload = qwmix::run_stats_to_json(stats);
      payload["config"] = {{"start", cfg.start},
                           {"strategy", r_strategy == "keep_going" ? "continue" : r_strategy},
                           {"interval", cfg.measure_interval},
                           {"settle_time", cfg.settle_time},
                           {"max_rounds", cfg.max_rounds},
                           {"seed", cfg.seed}};
      emit(qwmix::make_report(std::move(payload), spec_text), g);
      return kOk;
    }

    if (cmd_catalog->parsed()) {
      const std::vector<qwmix::CatalogResult> results = qwmix::run_catalog();
      bool all_pass = true;
      qwmix::json entries = qwmix::json::array();
      for (const qwmix::CatalogResult& r : results) {
        all_pass = all_pass && r.pass;
        entries.push_back(qwmix::json{{"name", r.name},
                                      {"claim", r.claim},
                                      {"pass", r.pass},
                                      {"measured", r.measured},
                                      {"expected", r.expected},
                                      {"tolerance", r.tolerance},
                                      {"what", r.what}});
      }
      qwmix::json payload{{"entries", std::move(entries)}, {"all_pass", all_pass}};
      emit(qwmix::make_report(std::move(payload), ""), g);
      return all_pass ? kOk : kClaimFail;
    }

    if (cmd_verify->parsed()) {
      const std::vector<qwmix::CriterionResult> results = qwmix::run_acceptance();
      bool all_pass = true;
      std::string lines;
      for (const qwmix::CriterionResult& c : results) {
        all_pass = all_pass && c.pass;
        lines += qwmix::make_report(qwmix::criterion_to_json(c), "").dump() + "\n";
      }
      write_text(g.out_path, lines);
      return all_pass ? kOk : kClaimFail;
    }
  } catch (const qwmix::Error& e) {
    std::cerr << qwmix::json{{"error", e.what()},
                             {"code", qwmix::error_code_name(e.code())}}
                     .dump()
              << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << qwmix::json{{"error", e.what()}, {"code", "Unexpected"}}.dump() << "\n";
    return kInputError;
  }
  return kInputError;
}
