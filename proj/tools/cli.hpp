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

#ifndef CLONEBOUND_TOOLS_CLI_HPP
#define CLONEBOUND_TOOLS_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 a computation failed or
// found a violation, 2 invalid flags or input files. Machine output goes to
// `out`, diagnostics to `err`.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clonebound/clonebound.hpp"

namespace clonebound::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Invalid configuration detected before any computation started.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

/// Value of a flag if given on the command line, else the config entry of the
/// same name, else the default.
template <typename T>
T pick(const CLI::Option* opt, const T& flag_value, const Json& config, const char* key, const T& fallback) {
  if (opt->count() > 0) return flag_value;
  if (config.is_object() && config.contains(key)) {
    try {
      return config.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw UsageError(std::string("config field '") + key + "' has the wrong type: " + e.what());
    }
  }
  return fallback;
}

inline void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw UsageError("--format must be 'json' or 'csv'");
}

/// Runs `load` then `compute`, mapping failures of the former to exit 2 and
/// of the latter to exit 1.
template <typename Load, typename Compute>
int staged(std::ostream& err, Load&& load, Compute&& compute) {
  try {
    load();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    return compute();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative-error bounds for mixed-state cloning: verification, bounds and cloner search"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // verify
  auto* verify = app.add_subcommand("verify", "Randomized check of the fidelity/angle inequalities");
  Index v_dim = 2;
  std::size_t v_trials = 10000;
  std::uint64_t v_seed = 0;
  std::string v_out, v_format = "json";
  verify->add_option("--dim", v_dim, "Hilbert-space dimension, 2..6")->default_val(2);
  verify->add_option("--trials", v_trials, "Number of random trials")->default_val(10000);
  verify->add_option("--seed", v_seed, "Master seed")->default_val(0);
  verify->add_option("--out", v_out, "Report path (stdout if omitted)");
  verify->add_option("--format", v_format, "json or csv")->default_val("json");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate the relative-error lower bound");
  double b_f = 0.0, b_phi = 1.0;
  int b_n = 1, b_l = 2;
  bound->add_option("--f", b_f, "sqrt fidelity of the input pair")->required();
  bound->add_option("--phi", b_phi, "sqrt fidelity of the ancilla pair")->required();
  bound->add_option("--n", b_n, "Number of input copies N")->default_val(1);
  bound->add_option("--l", b_l, "Number of output copies L")->default_val(2);

  // purify
  auto* purify_cmd = app.add_subcommand("purify", "Purifications of two states with a prescribed overlap");
  std::string p_states, p_out;
  double p_phi = 0.0;
  purify_cmd->add_option("--states", p_states, "JSON file with rho1 and rho2")->required();
  purify_cmd->add_option("--phi", p_phi, "Target overlap |<Y1|Y2>|")->required();
  purify_cmd->add_option("--out", p_out, "Output path (stdout if omitted)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Search unitaries for a minimal relative error");
  std::string o_config, o_out, o_format;
  std::uint64_t o_seed = 0;
  int o_restarts = 0, o_iterations = 0;
  double o_step = 0.0, o_decay = 0.0, o_tol = 0.0;
  optimize->add_option("--config", o_config, "JSON run configuration")->required();
  auto* o_seed_opt = optimize->add_option("--seed", o_seed, "Master seed (default 0)");
  auto* o_restarts_opt = optimize->add_option("--restarts", o_restarts, "Random restarts");
  auto* o_iterations_opt = optimize->add_option("--iterations", o_iterations, "Sweeps per restart");
  auto* o_step_opt = optimize->add_option("--step", o_step, "Initial coordinate step");
  auto* o_decay_opt = optimize->add_option("--decay", o_decay, "Step decay per sweep, in (0,1)");
  auto* o_tol_opt = optimize->add_option("--tol", o_tol, "Stop once the step falls below this");
  auto* o_out_opt = optimize->add_option("--out", o_out, "Result path (stdout if omitted)");
  auto* o_format_opt = optimize->add_option("--format", o_format, "json or csv");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate the lower bound over a grid of f");
  std::string s_config, s_out, s_format;
  std::vector<double> s_f;
  double s_phi = 1.0;
  int s_n = 1, s_l = 2;
  sweep->add_option("--config", s_config, "Optional JSON configuration");
  auto* s_f_opt = sweep->add_option("--f", s_f, "Comma-separated f grid")->delimiter(',');
  auto* s_phi_opt = sweep->add_option("--phi", s_phi, "Ancilla sqrt fidelity");
  auto* s_n_opt = sweep->add_option("--n", s_n, "Number of input copies N");
  auto* s_l_opt = sweep->add_option("--l", s_l, "Number of output copies L");
  auto* s_out_opt = sweep->add_option("--out", s_out, "Table path (stdout if omitted)");
  auto* s_format_opt = sweep->add_option("--format", s_format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (verify->parsed()) {
    return detail::staged(
        err,
        [&] {
          if (v_dim < 2 || v_dim > 6) throw UsageError("--dim must lie in [2, 6]");
          if (v_trials < 1) throw UsageError("--trials must be at least 1");
          detail::check_format(v_format);
        },
        [&] {
          const auto rep = verify_inequalities(v_dim, v_trials, v_seed);
          detail::emit(v_format == "csv" ? io::to_csv(rep) : io::to_json(rep).dump(2) + "\n", v_out, out);
          if (rep.violations > 0) {
            err << "verify: " << rep.violations << " violation(s)\n";
            return kFailure;
          }
          return kOk;
        });
  }

  if (bound->parsed()) {
    return detail::staged(
        err,
        [&] {
          if (!(b_f >= 0.0 && b_f <= 1.0)) throw UsageError("--f must lie in [0, 1]");
          if (!(b_phi >= 0.0 && b_phi <= 1.0)) throw UsageError("--phi must lie in [0, 1]");
          if (b_n < 1 || b_l <= b_n) throw UsageError("need --l > --n >= 1");
        },
        [&] {
          out << format_double(lower_bound({b_f, b_phi, b_n, b_l})) << '\n';
          return kOk;
        });
  }

  if (purify_cmd->parsed()) {
    std::optional<DensityMatrix> rho1, rho2;
    return detail::staged(
        err,
        [&] {
          const Json doc = detail::read_json_file(p_states);
          rho1 = io::density_from_json(io::detail::field(doc, "rho1"));
          rho2 = io::density_from_json(io::detail::field(doc, "rho2"));
          if (rho1->dim() != rho2->dim()) throw UsageError("rho1 and rho2 differ in dimension");
          if (!(p_phi >= 0.0)) throw UsageError("--phi must be nonnegative");
        },
        [&] {
          const auto [y1, y2] = purifications_with_overlap(*rho1, *rho2, p_phi);
          const Index d = rho1->dim();
          const DimSpec split{d, d};
          const double res1 = (partial_trace(y1.amp() * y1.amp().adjoint(), split, {0}) - rho1->op()).norm();
          const double res2 = (partial_trace(y2.amp() * y2.amp().adjoint(), split, {0}) - rho2->op()).norm();
          const double overlap = std::abs(y1.amp().dot(y2.amp()));
          const Json doc{{"y1", io::to_json(y1)},
                         {"y2", io::to_json(y2)},
                         {"phi", p_phi},
                         {"verification",
                          {{"marginal_residual1", res1},
                           {"marginal_residual2", res2},
                           {"achieved_overlap", overlap},
                           {"overlap_error", std::abs(overlap - p_phi)}}}};
          detail::emit(doc.dump(2) + "\n", p_out, out);
          return kOk;
        });
  }

  if (optimize->parsed()) {
    Json config;
    OptimizerConfig cfg;
    std::optional<CloningSetup> setup;
    bool restricted = false;
    std::string out_path, format;
    return detail::staged(
        err,
        [&] {
          config = detail::read_json_file(o_config);
          if (!config.is_object()) throw UsageError("config must be a JSON object");
          cfg.seed = detail::pick(o_seed_opt, o_seed, config, "seed", std::uint64_t{0});
          cfg.restarts = detail::pick(o_restarts_opt, o_restarts, config, "restarts", cfg.restarts);
          cfg.iterations = detail::pick(o_iterations_opt, o_iterations, config, "iterations", cfg.iterations);
          cfg.initial_step = detail::pick(o_step_opt, o_step, config, "step", cfg.initial_step);
          cfg.step_decay = detail::pick(o_decay_opt, o_decay, config, "decay", cfg.step_decay);
          cfg.convergence_tol = detail::pick(o_tol_opt, o_tol, config, "tol", cfg.convergence_tol);
          out_path = detail::pick(o_out_opt, o_out, config, "out", std::string{});
          format = detail::pick(o_format_opt, o_format, config, "format", std::string{"json"});
          detail::check_format(format);
          validate(cfg);

          const auto rho1 = io::density_from_json(io::detail::field(config, "rho1"));
          const auto rho2 = io::density_from_json(io::detail::field(config, "rho2"));
          const int n = config.value("n", 1);
          const int l = config.value("l", 2);
          restricted = config.value("restricted", false);
          if (restricted) {
            setup = pure_ancilla_setup(rho1, rho2, 1, 2, 1);
          } else if (config.contains("upsilon1") || config.contains("upsilon2")) {
            const auto u1 = io::density_from_json(io::detail::field(config, "upsilon1"));
            const auto u2 = io::density_from_json(io::detail::field(config, "upsilon2"));
            if (l <= n) throw UsageError("need l > n >= 1");
            const Index blank = clonebound::detail::checked_pow(rho1.dim(), l - n, "optimize");
            const Index env = config.value("env_dim", u1.dim() / blank);
            const Index total = u1.dim() * clonebound::detail::checked_pow(rho1.dim(), n, "optimize");
            setup = CloningSetup{rho1, rho2, u1, u2, ComplexMatrix::Identity(total, total), n, l, env};
          } else {
            const std::string ancilla = config.value("ancilla", std::string{"pure"});
            if (ancilla == "purifying") {
              setup = purifying_ancilla_setup(rho1, rho2, n, l);
            } else if (ancilla == "pure") {
              setup = pure_ancilla_setup(rho1, rho2, n, l, config.value("env_dim", rho1.dim() * rho1.dim()));
            } else {
              throw UsageError("config 'ancilla' must be 'pure' or 'purifying'");
            }
          }
          validate(*setup);
        },
        [&] {
          const auto& s = *setup;
          const auto result =
              restricted ? restricted_cloner_search(s.rho1, s.rho2, cfg)
                         : minimize_relative_error(s.rho1, s.rho2, s.upsilon1, s.upsilon2,
                                                   CloneDims{s.n_in, s.n_out, s.env_dim}, cfg);
          CloningSetup best = s;
          best.v = result.best_v;
          if (format == "csv") {
            detail::emit(io::to_csv(result), out_path, out);
          } else {
            Json doc = io::to_json(result);
            doc["config"] = io::to_json(cfg);
            doc["restricted"] = restricted;
            doc["setup"] = io::to_json(best);
            doc["outcome"] = io::to_json(apply_cloning(best));
            detail::emit(doc.dump(2) + "\n", out_path, out);
          }
          if (!result.sound()) {
            err << "optimize: relative error " << format_double(result.best_r) << " below bound "
                << format_double(result.bound) << '\n';
            return kFailure;
          }
          return kOk;
        });
  }

  if (sweep->parsed()) {
    std::vector<double> grid;
    double phi = 1.0;
    int n = 1, l = 2;
    std::string out_path, format;
    return detail::staged(
        err,
        [&] {
          Json config = s_config.empty() ? Json::object() : detail::read_json_file(s_config);
          if (!config.is_object()) throw UsageError("config must be a JSON object");
          grid = detail::pick(s_f_opt, s_f, config, "f", std::vector<double>{});
          phi = detail::pick(s_phi_opt, s_phi, config, "phi", 1.0);
          n = detail::pick(s_n_opt, s_n, config, "n", 1);
          l = detail::pick(s_l_opt, s_l, config, "l", 2);
          out_path = detail::pick(s_out_opt, s_out, config, "out", std::string{});
          format = detail::pick(s_format_opt, s_format, config, "format", std::string{"csv"});
          detail::check_format(format);
          if (grid.empty()) throw UsageError("--f grid is empty");
          for (double f : grid) {
            if (!(f >= 0.0 && f <= 1.0)) throw UsageError("--f values must lie in [0, 1)");
          }
          if (!(phi >= 0.0 && phi <= 1.0)) throw UsageError("--phi must lie in [0, 1]");
          if (n < 1 || l <= n) throw UsageError("need --l > --n >= 1");
        },
        [&] {
          const auto rows = sweep_bound(grid, phi, n, l);
          detail::emit(format == "csv" ? io::to_csv(rows) : io::to_json(rows).dump(2) + "\n", out_path, out);
          return kOk;
        });
  }
  return kUsage;
}

}  // namespace clonebound::cli

#endif  // CLONEBOUND_TOOLS_CLI_HPP
