// Copyright 2026 The clonebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLONEBOUND_SEARCH_HPP
#define CLONEBOUND_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clonebound/clone.hpp"
#include "clonebound/io.hpp"
#include "clonebound/measure.hpp"
#include "clonebound/random.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

/// Budget and schedule of the gradient-free unitary search. One iteration is a
/// sweep over all generator coordinates in random order; the step shrinks by
/// `step_decay` after each sweep and the restart ends once it falls below
/// `convergence_tol`.
struct OptimizerConfig {
  int restarts = 4;
  int iterations = 40;
  double initial_step = 0.5;
  double step_decay = 0.7;
  std::uint64_t seed = 0;
  double convergence_tol = 1e-6;
};

inline void validate(const OptimizerConfig& cfg) {
  detail::require(cfg.restarts > 0 && cfg.iterations > 0, ErrorCode::BudgetZero,
                  "OptimizerConfig: restarts and iterations must be positive");
  detail::require(std::isfinite(cfg.initial_step) && cfg.initial_step > 0.0, ErrorCode::InvalidArgument,
                  "OptimizerConfig: initial step must be positive");
  detail::require(cfg.step_decay > 0.0 && cfg.step_decay < 1.0, ErrorCode::InvalidArgument,
                  "OptimizerConfig: step decay must lie strictly inside (0, 1)");
  detail::require(std::isfinite(cfg.convergence_tol) && cfg.convergence_tol > 0.0,
                  ErrorCode::InvalidArgument, "OptimizerConfig: convergence tolerance must be positive");
}

/// Register layout of an N -> L operation with an env_dim-level environment.
struct CloneDims {
  int n_in = 1;
  int n_out = 2;
  Index env_dim = 1;
};

/// Slack allowed when comparing a searched relative error with the bound.
inline constexpr double kSoundnessSlack = 1e-8;

struct SearchResult {
  ComplexMatrix best_v;
  double best_r = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double f = 0.0;
  double phi = 0.0;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
  std::vector<std::vector<double>> traces;  // best-so-far after each sweep, per restart

  bool sound() const noexcept { return gap >= -kSoundnessSlack; }
};

namespace detail {

/// Hermitian generator from d^2 reals: diagonal first, then (re, im) of the
/// strict upper triangle in row-major order.
inline ComplexMatrix hermitian_from_params(const std::vector<double>& theta, Index n) {
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  std::size_t k = 0;
  for (Index i = 0; i < n; ++i) h(i, i) = theta[k++];
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Complex z(theta[k], theta[k + 1]);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

struct RestartOutcome {
  std::vector<double> theta;
  double best_r = 0.0;
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

inline RestartOutcome run_restart(const CloningEvaluator& eval, const OptimizerConfig& cfg, std::size_t index) {
  const Index n = eval.total_dim();
  const std::size_t params = static_cast<std::size_t>(n * n);
  Rng rng = make_rng(derive_seed(cfg.seed, index));

  RestartOutcome out;
  out.theta.assign(params, 0.0);
  if (index > 0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& t : out.theta) t = normal(rng);
  }
  auto objective = [&](const std::vector<double>& theta) {
    ++out.evaluations;
    return eval.relative_error(unitary_exp(hermitian_from_params(theta, n)));
  };
  out.best_r = objective(out.theta);

  std::vector<std::size_t> order(params);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double step = cfg.initial_step;
  for (int it = 0; it < cfg.iterations && step >= cfg.convergence_tol && out.best_r > 0.0; ++it) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t c : order) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = out.theta;
        trial[c] += sign * step;
        const double r = objective(trial);
        if (r < out.best_r) {
          out.best_r = r;
          out.theta = std::move(trial);
          break;
        }
      }
    }
    out.trace.push_back(out.best_r);
    step *= cfg.step_decay;
  }
  return out;
}

}  // namespace detail

/// Minimizes the relative error over V = exp(iH) for a fixed input and
/// ancilla pair. Restart 0 starts at V = 1, later restarts at random
/// generators; each restart draws from its own seed derived from cfg.seed.
inline SearchResult minimize_relative_error(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                            const DensityMatrix& upsilon1, const DensityMatrix& upsilon2,
                                            const CloneDims& dims, const OptimizerConfig& cfg) {
  validate(cfg);
  const CloningEvaluator eval(rho1, rho2, upsilon1, upsilon2, dims.n_in, dims.n_out, dims.env_dim);

  std::vector<detail::RestartOutcome> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int k = 0; k < cfg.restarts; ++k) runs.push_back(detail::run_restart(eval, cfg, std::size_t(k)));

  // Min-reduce; ties go to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].best_r < runs[best].best_r) best = k;
  }

  SearchResult res;
  const Index n = eval.total_dim();
  res.best_v = unitary_exp(detail::hermitian_from_params(runs[best].theta, n));
  res.best_r = runs[best].best_r;
  res.best_restart = best;
  res.f = root_fidelity(rho1, rho2);
  res.phi = root_fidelity(upsilon1, upsilon2);
  res.bound = lower_bound({res.f, std::min(res.phi, 1.0), dims.n_in, dims.n_out});
  res.gap = res.best_r - res.bound;
  for (auto& r : runs) {
    res.evaluations += r.evaluations;
    res.traces.push_back(std::move(r.trace));
  }
  return res;
}

/// 1 -> 2 cloners acting on H (x) H only, with register B starting in a pure
/// state and no environment. A fixed |0> loses no generality since V is free.
inline SearchResult restricted_cloner_search(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                             const OptimizerConfig& cfg) {
  detail::require(rho1.dim() <= 4, ErrorCode::InvalidArgument, "restricted_cloner_search: d must be <= 4");
  const auto blank = DensityMatrix::basis(rho1.dim(), 0);
  return minimize_relative_error(rho1, rho2, blank, blank, CloneDims{1, 2, 1}, cfg);
}

/// Outcome of one randomized inequality over all trials. `max_excess` is the
/// largest lhs - rhs seen; the inequality is violated when it exceeds the slack.
struct CheckTally {
  std::string name;
  std::size_t violations = 0;
  double max_excess = -std::numeric_limits<double>::infinity();
  Json worst_case;
};

struct VerificationReport {
  Index dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double slack = 1e-9;
  std::size_t violations = 0;
  double max_slack_violation = -std::numeric_limits<double>::infinity();
  std::vector<CheckTally> checks;
};

/// Randomized check of the angle triangle inequality, the fidelity-difference
/// bound, the measurement-statistics bound and the projector gap bound.
inline VerificationReport verify_inequalities(Index d, std::size_t trials, std::uint64_t seed,
                                              double slack = 1e-9) {
  detail::require(d >= 2 && d <= 6, ErrorCode::InvalidArgument, "verify_inequalities: d must lie in [2, 6]");
  detail::require(trials >= 1, ErrorCode::InvalidArgument, "verify_inequalities: trials must be >= 1");

  VerificationReport rep;
  rep.dim = d;
  rep.trials = trials;
  rep.seed = seed;
  rep.slack = slack;
  for (const char* name : {"triangle", "fidelity_difference", "measurement_statistics", "projector_gap"}) {
    rep.checks.emplace_back().name = name;
  }

  auto record = [&](CheckTally& tally, double lhs, double rhs, auto&& inputs) {
    const double excess = lhs - rhs;
    if (excess > slack) ++tally.violations;
    if (excess > tally.max_excess) {
      tally.max_excess = excess;
      tally.worst_case = inputs();
      tally.worst_case["lhs"] = lhs;
      tally.worst_case["rhs"] = rhs;
    }
  };

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    std::uniform_int_distribution<Index> rank(1, d);
    std::uniform_int_distribution<std::size_t> outcomes(2, 5);
    const auto chi = random_density(d, rank(rng), rng);
    const auto omega = random_density(d, rank(rng), rng);
    const auto rho = random_density(d, rank(rng), rng);
    const auto povm = random_povm(d, outcomes(rng), rng);
    const auto x = random_pure(d, rng);
    const auto y = random_pure(d, rng);
    const auto pi = random_projector(d, rank(rng), rng);

    const double a_co = angle(chi, omega);
    const double s_co = sin_angle(chi, omega);
    const auto states = [&] {
      return Json{{"trial", t}, {"chi", io::to_json(chi)}, {"omega", io::to_json(omega)}, {"rho", io::to_json(rho)}};
    };

    record(rep.checks[0], a_co, angle(chi, rho) + angle(omega, rho), states);
    record(rep.checks[1], std::abs(fidelity(chi, rho) - fidelity(omega, rho)), s_co, states);

    const auto pc = probabilities(povm, chi);
    const auto po = probabilities(povm, omega);
    double max_diff = 0.0;
    for (std::size_t a = 0; a < pc.size(); ++a) max_diff = std::max(max_diff, std::abs(pc[a] - po[a]));
    record(rep.checks[2], max_diff, s_co, [&] {
      return Json{{"trial", t}, {"chi", io::to_json(chi)}, {"omega", io::to_json(omega)}, {"povm", io::to_json(povm)}};
    });

    record(rep.checks[3], projector_gap(x, y, pi), std::sin(angle_pure(x, y)), [&] {
      return Json{{"trial", t}, {"x", io::to_json(x)}, {"y", io::to_json(y)}, {"projector", io::matrix_to_json(pi)}};
    });
  }

  for (const auto& c : rep.checks) {
    rep.violations += c.violations;
    rep.max_slack_violation = std::max(rep.max_slack_violation, c.max_excess);
  }
  return rep;
}

struct SweepRow {
  double f = 0.0;
  double phi = 0.0;
  int n_in = 1;
  int n_out = 2;
  double bound = 0.0;
};

/// Bound table over a grid of input overlaps at fixed phi, N, L.
inline std::vector<SweepRow> sweep_bound(const std::vector<double>& f_grid, double phi, int n_in, int n_out) {
  std::vector<SweepRow> rows;
  rows.reserve(f_grid.size());
  for (double f : f_grid) {
    detail::require(std::isfinite(f) && f >= 0.0 && f <= 1.0, ErrorCode::OutOfRange,
                    "sweep_bound: grid values must lie in [0, 1)");
    rows.push_back({f, phi, n_in, n_out, lower_bound({f, phi, n_in, n_out})});
  }
  return rows;
}

namespace io {

inline Json to_json(const OptimizerConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"iterations", cfg.iterations},
          {"step", cfg.initial_step},
          {"decay", cfg.step_decay},
          {"seed", cfg.seed},
          {"tol", cfg.convergence_tol}};
}

inline Json to_json(const SearchResult& r) {
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(t);
  return {{"best_v", matrix_to_json(r.best_v)},
          {"best_r", r.best_r},
          {"bound", r.bound},
          {"gap", r.gap},
          {"f", r.f},
          {"phi", r.phi},
          {"best_restart", r.best_restart},
          {"evaluations", r.evaluations},
          {"sound", r.sound()},
          {"traces", traces}};
}

inline Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"violations", c.violations},
                      {"max_excess", c.max_excess},
                      {"worst_case", c.worst_case}});
  }
  return {{"dim", rep.dim},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"slack", rep.slack},
          {"violations", rep.violations},
          {"max_slack_violation", rep.max_slack_violation},
          {"checks", checks}};
}

inline VerificationReport report_from_json(const Json& j) {
  VerificationReport rep;
  rep.dim = detail::positive_index(j, "dim");
  rep.trials = detail::field(j, "trials").get<std::size_t>();
  rep.seed = detail::field(j, "seed").get<std::uint64_t>();
  rep.slack = detail::field(j, "slack").get<double>();
  rep.violations = detail::field(j, "violations").get<std::size_t>();
  rep.max_slack_violation = detail::field(j, "max_slack_violation").get<double>();
  for (const auto& c : detail::field(j, "checks")) {
    rep.checks.push_back({detail::field(c, "name").get<std::string>(),
                          detail::field(c, "violations").get<std::size_t>(),
                          detail::field(c, "max_excess").get<double>(), detail::field(c, "worst_case")});
  }
  return rep;
}

inline std::string to_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "check,dim,trials,seed,violations,max_excess\n";
  for (const auto& c : rep.checks) {
    os << c.name << ',' << rep.dim << ',' << rep.trials << ',' << rep.seed << ',' << c.violations << ','
       << format_double(c.max_excess) << '\n';
  }
  return os.str();
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "f,phi,N,L,bound\n";
  for (const auto& r : rows) {
    os << format_double(r.f) << ',' << format_double(r.phi) << ',' << r.n_in << ',' << r.n_out << ','
       << format_double(r.bound) << '\n';
  }
  return os.str();
}

inline Json to_json(const std::vector<SweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"f", r.f}, {"phi", r.phi}, {"N", r.n_in}, {"L", r.n_out}, {"bound", r.bound}});
  }
  return arr;
}

inline std::string to_csv(const SearchResult& r) {
  std::ostringstream os;
  os << "restart,iteration,best_r\n";
  for (std::size_t k = 0; k < r.traces.size(); ++k) {
    for (std::size_t i = 0; i < r.traces[k].size(); ++i) {
      os << k << ',' << i << ',' << format_double(r.traces[k][i]) << '\n';
    }
  }
  return os.str();
}

}  // namespace io
}  // namespace clonebound

#endif  // CLONEBOUND_SEARCH_HPP
