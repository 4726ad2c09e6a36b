#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/error.hpp"
#include "qwmix/mixing.hpp"

namespace qwmix {

// Deterministic 64-bit generator (splitmix64 step function). Per-trial
// streams are derived by folding the trial index into the seed, so trial k
// of a run is reproducible in isolation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(scramble(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

struct WalkState {
  std::vector<cplx> amp;

  double norm() const {
    double s = 0.0;
    for (const cplx& z : amp) s += std::norm(z);
    return std::sqrt(s);
  }

  static WalkState basis(std::size_t n, std::size_t v) {
    if (v >= n) fail(ErrorCode::IndexOutOfRange, "basis vertex out of range");
    WalkState w;
    w.amp.assign(n, cplx(0.0, 0.0));
    w.amp[v] = 1.0;
    return w;
  }
};

inline WalkState evolve_state(const HermitianMatrix& a, const WalkState& psi, double t) {
  if (psi.amp.size() != a.n()) fail(ErrorCode::DimensionMismatch, "state length mismatch");
  WalkState out;
  out.amp = evolution(a, t).apply(psi.amp);
  return out;
}

struct MeasurementOutcome {
  bool hit = false;
  double p_hit = 0.0;
  WalkState post;
};

// Projective yes/no measurement of "walker at vertex v". On a miss the
// amplitude at v is removed and the remainder renormalized; a miss branch
// of negligible norm cannot be conditioned on.
inline MeasurementOutcome partial_measure(const WalkState& psi, std::size_t v,
                                          SplitMix64& rng) {
  const std::size_t n = psi.amp.size();
  if (v >= n) fail(ErrorCode::IndexOutOfRange, "measured vertex out of range");
  MeasurementOutcome out;
  out.p_hit = std::norm(psi.amp[v]);
  if (rng.next_double() < out.p_hit) {
    out.hit = true;
    out.post = WalkState::basis(n, v);
    return out;
  }
  out.post = psi;
  out.post.amp[v] = 0.0;
  const double nrm = out.post.norm();
  if (nrm <= 1e-12)
    fail(ErrorCode::CollapseUndefined, "miss branch has negligible norm");
  for (cplx& z : out.post.amp) z /= nrm;
  return out;
}

// Apex times for the cone over an order-n base with A 1 = 0: t0 spreads the
// walker uniformly over all n + 1 vertices, t1 empties the apex and spreads
// uniformly over the base.
struct ConeTimes {
  double t0 = 0.0;
  double t1 = 0.0;
};

inline ConeTimes cone_times(std::size_t base_order) {
  if (base_order == 0) fail(ErrorCode::BadInput, "base order must be positive");
  const double n = static_cast<double>(base_order);
  ConeTimes t;
  t.t0 = std::acos(1.0 / std::sqrt(n + 1.0)) / std::sqrt(n);
  t.t1 = std::numbers::pi / (2.0 * std::sqrt(n));
  return t;
}

// Closed form for the apex amplitude of an unscaled cone: starting from any
// base vertex, the amplitude at the apex after time t is
// -(i / sqrt(n)) sin(sqrt(n) t), regardless of the base structure.
inline cplx cone_hit_formula(std::size_t base_order, double t) {
  if (base_order == 0) fail(ErrorCode::BadInput, "base order must be positive");
  const double rn = std::sqrt(static_cast<double>(base_order));
  return cplx(0.0, -std::sin(rn * t) / rn);
}

// Structural validation of a cone matrix: vertex 0 is the apex, joined to
// every base vertex with one common positive weight, and the base block
// annihilates the all-ones vector. Returns the apex weight (1 for unscaled
// cones, 1/n for scaled ones).
inline double validate_cone(const HermitianMatrix& cone) {
  const std::size_t total = cone.n();
  if (total < 2) fail(ErrorCode::ConeInvalid, "cone needs an apex and a base");
  const std::size_t n = total - 1;
  const cplx w0 = cone.at(0, 1);
  if (std::abs(w0.imag()) > 1e-12 || w0.real() <= 0.0)
    fail(ErrorCode::ConeInvalid, "apex weight must be real positive");
  const double w = w0.real();
  for (std::size_t v = 1; v <= n; ++v)
    if (std::abs(cone.at(0, v) - w0) > 1e-12 || std::abs(cone.at(v, 0) - w0) > 1e-12)
      fail(ErrorCode::ConeInvalid, "apex row is not constant");
  for (std::size_t v = 0; v <= n; ++v)
    if (std::abs(cone.at(v, v)) > 1e-12)
      fail(ErrorCode::ConeInvalid, "diagonal must vanish");
  const double row_tol = 1e-9 * std::max(1.0, cone.inf_norm());
  for (std::size_t u = 1; u <= n; ++u) {
    cplx s(0.0, 0.0);
    for (std::size_t v = 1; v <= n; ++v) s += cone.at(u, v);
    if (std::abs(s) > row_tol)
      fail(ErrorCode::ConeInvalid, "base rows must sum to zero");
  }
  return w;
}

// Walk amplitude at the apex after time t for a walker prepared at a base
// vertex of the cone.
inline cplx cone_hit_amplitude(const HermitianMatrix& cone, std::size_t start, double t) {
  validate_cone(cone);
  if (start < 1 || start >= cone.n())
    fail(ErrorCode::IndexOutOfRange, "start must be a base vertex");
  return evolution(cone, t).at(0, start);
}

enum class Strategy { restart, keep_going };

// A measured run on a cone: prepare a base vertex, evolve for a fixed
// interval, measure the apex, repeat until a hit, then evolve the collapsed
// state for the settle time, which spreads it uniformly. On a miss, restart
// re-prepares the start vertex while keep_going evolves the collapsed state
// further.
struct StoppingRuleConfig {
  HermitianMatrix cone;
  std::size_t start = 1;
  Strategy strategy = Strategy::restart;
  double measure_interval = 0.0;
  double settle_time = 0.0;
  std::size_t max_rounds = 0;
  std::uint64_t seed = 0;
};

// Fills the derived fields: measurement at the apex-emptying time t1 and a
// settle phase of t0 (both stretched by the inverse apex weight so scaled
// cones get proportionally longer times), with a generous round cap of 100n.
inline StoppingRuleConfig make_stopping_config(const HermitianMatrix& cone,
                                               std::size_t start, Strategy strategy,
                                               std::uint64_t seed) {
  const double w = validate_cone(cone);
  const std::size_t n = cone.n() - 1;
  if (start < 1 || start > n)
    fail(ErrorCode::IndexOutOfRange, "start must be a base vertex");
  StoppingRuleConfig cfg;
  cfg.cone = cone;
  cfg.start = start;
  cfg.strategy = strategy;
  cfg.measure_interval = cone_times(n).t1 / w;
  cfg.settle_time = cone_times(n).t0 / w;
  cfg.max_rounds = 100 * n;
  cfg.seed = seed;
  return cfg;
}

struct TrialResult {
  bool hit = false;
  std::size_t rounds = 0;
  double total_time = 0.0;       // rounds * interval, plus settle on a hit
  double final_deviation = 1.0;  // uniformity error of the settled state
};

struct RunStats {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double hit_rate = 0.0;
  double mean_rounds_to_hit = 0.0;
  double mean_time_to_hit = 0.0;
  double max_final_deviation = 0.0;
  std::vector<std::size_t> round_attempts;
  std::vector<std::size_t> round_hits;
};

inline void validate_stopping_config(const StoppingRuleConfig& cfg) {
  validate_cone(cfg.cone);
  if (cfg.start < 1 || cfg.start >= cfg.cone.n())
    fail(ErrorCode::IndexOutOfRange, "start must be a base vertex");
  if (!(cfg.measure_interval > 0.0))
    fail(ErrorCode::BadInput, "measure interval must be positive");
  if (!(cfg.settle_time >= 0.0)) fail(ErrorCode::BadInput, "settle time must not be negative");
  if (cfg.max_rounds == 0) fail(ErrorCode::BadInput, "max rounds must be positive");
}

namespace detail {

class TrialEngine {
 public:
  explicit TrialEngine(const StoppingRuleConfig& cfg)
      : cfg_(cfg), step_(evolution(cfg.cone, cfg.measure_interval)) {
    validate_stopping_config(cfg);
    // A hit collapses the walker onto the apex, so the settled distribution
    // is the same in every trial and can be computed once.
    const std::size_t n = cfg.cone.n();
    const WalkState settled =
        evolve_state(cfg.cone, WalkState::basis(n, 0), cfg.settle_time);
    const double target = 1.0 / static_cast<double>(n);
    settle_deviation_ = 0.0;
    for (const cplx& z : settled.amp)
      settle_deviation_ = std::max(settle_deviation_, std::abs(std::norm(z) - target));
  }

  double settle_deviation() const { return settle_deviation_; }

  template <class PerRound>
  TrialResult run(SplitMix64& rng, PerRound&& per_round) const {
    const std::size_t n = cfg_.cone.n();
    WalkState psi = WalkState::basis(n, cfg_.start);
    TrialResult res;
    for (std::size_t r = 1; r <= cfg_.max_rounds; ++r) {
      psi.amp = step_.apply(psi.amp);
      const double p = std::norm(psi.amp[0]);
      const double u = rng.next_double();
      const bool hit = u < p;
      per_round(r, hit, p);
      if (hit) {
        res.hit = true;
        res.rounds = r;
        res.total_time = static_cast<double>(r) * cfg_.measure_interval + cfg_.settle_time;
        res.final_deviation = settle_deviation_;
        return res;
      }
      if (cfg_.strategy == Strategy::restart) {
        psi = WalkState::basis(n, cfg_.start);
      } else {
        psi.amp[0] = 0.0;
        const double nrm = psi.norm();
        if (nrm <= 1e-12)
          fail(ErrorCode::CollapseUndefined, "miss branch has negligible norm");
        for (cplx& z : psi.amp) z /= nrm;
      }
    }
    res.rounds = cfg_.max_rounds;
    res.total_time = static_cast<double>(cfg_.max_rounds) * cfg_.measure_interval;
    return res;
  }

 private:
  const StoppingRuleConfig& cfg_;
  ComplexMatrix step_;
  double settle_deviation_ = 0.0;
};

}  // namespace detail

inline TrialResult run_trial(const StoppingRuleConfig& cfg, SplitMix64& rng) {
  return detail::TrialEngine(cfg).run(rng, [](std::size_t, bool, double) {});
}

// Runs independent trials on per-trial rng streams and folds the results in
// trial-index order. The sink observes every measurement as
// sink(trial, round, hit, p_hit); pass a no-op to skip tracing.
template <class Sink>
inline RunStats monte_carlo(const StoppingRuleConfig& cfg, std::size_t trials,
                            Sink&& sink) {
  if (trials == 0) fail(ErrorCode::BadInput, "need at least one trial");
  const detail::TrialEngine engine(cfg);
  RunStats stats;
  stats.trials = trials;
  stats.round_attempts.assign(cfg.max_rounds, 0);
  stats.round_hits.assign(cfg.max_rounds, 0);
  double rounds_sum = 0.0, time_sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    SplitMix64 rng = SplitMix64::stream(cfg.seed, i);
    const TrialResult r = engine.run(rng, [&](std::size_t round, bool hit, double p) {
      ++stats.round_attempts[round - 1];
      if (hit) ++stats.round_hits[round - 1];
      sink(i, round, hit, p);
    });
    if (r.hit) {
      ++stats.hits;
      rounds_sum += static_cast<double>(r.rounds);
      time_sum += r.total_time;
      stats.max_final_deviation = std::max(stats.max_final_deviation, r.final_deviation);
    }
  }
  stats.hit_rate = static_cast<double>(stats.hits) / static_cast<double>(trials);
  if (stats.hits > 0) {
    stats.mean_rounds_to_hit = rounds_sum / static_cast<double>(stats.hits);
    stats.mean_time_to_hit = time_sum / static_cast<double>(stats.hits);
  }
  return stats;
}

inline RunStats monte_carlo(const StoppingRuleConfig& cfg, std::size_t trials) {
  return monte_carlo(cfg, trials, [](std::size_t, std::size_t, bool, double) {});
}

// Hit probability at each round of the always-miss branch, computed without
// sampling. Under restart this is constant; under keep_going it exposes how
// the post-measurement state interferes with later measurements.
inline std::vector<double> deterministic_round_probs(const StoppingRuleConfig& cfg,
                                                     std::size_t rounds) {
  validate_stopping_config(cfg);
  const std::size_t n = cfg.cone.n();
  const ComplexMatrix step = evolution(cfg.cone, cfg.measure_interval);
  WalkState psi = WalkState::basis(n, cfg.start);
  std::vector<double> probs;
  probs.reserve(rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    psi.amp = step.apply(psi.amp);
    probs.push_back(std::norm(psi.amp[0]));
    if (cfg.strategy == Strategy::restart) {
      psi = WalkState::basis(n, cfg.start);
    } else {
      psi.amp[0] = 0.0;
      const double nrm = psi.norm();
      if (nrm <= 1e-12) fail(ErrorCode::CollapseUndefined, "miss branch has negligible norm");
      for (cplx& z : psi.amp) z /= nrm;
    }
  }
  return probs;
}

}  // namespace qwmix
