#include "fqco/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fqco/error.hpp"
#include "fqco/format.hpp"
#include "fqco/operators.hpp"
#include "fqco/oracle.hpp"
#include "fqco/problem_io.hpp"
#include "fqco/sweep.hpp"
#include "fqco/trace_io.hpp"

namespace fqco::cli {

using nlohmann::json;

namespace {

// Maps library exceptions onto the exit-code contract.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainFailure;
  }
}

json spectrum_json(const std::vector<double>& diag) {
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  return json{{"min", *lo}, {"max", *hi}};
}

}  // namespace

std::vector<double> gammas_for(const QcboProblem& p, std::optional<double> gamma) {
  if (gamma) return resolve_gammas(p, std::vector<double>{*gamma});
  if (p.default_gamma) return resolve_gammas(p, std::vector<double>{*p.default_gamma});
  return resolve_gammas(p, {});
}

int cmd_verify(const std::filesystem::path& problem_path, std::optional<double> gamma,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const QcboProblem p = canonicalize(load_problem(problem_path));
    const std::vector<double> gammas = gammas_for(p, gamma);
    const ConstraintOperator op =
        build_constraint_operator(p, gammas, GammaCheck::kNonNegative);
    const EncodingCheck check = op.encoding ? *op.encoding
                                            : verify_ground_state_encoding(op, p);
    const std::vector<double> cost_diag = to_diagonal_vector(op.cost);
    const auto [lo, hi] = std::minmax_element(cost_diag.begin(), cost_diag.end());

    json report;
    report["ok"] = check.ok;
    report["n"] = p.n;
    report["slack_bits"] = p.slack_bits;
    report["gammas"] = gammas;
    report["gamma_bound"] = gamma_upper_bound_choice(op.cost);
    report["energy_gap"] = {{"bound", gamma_upper_bound_choice(op.cost)},
                            {"exact", *hi - *lo}};
    report["argmin"] = to_bitstring(check.argmin);
    report["min_value"] = check.min_value;
    report["gap"] = check.gap;
    report["argmin_multiplicity"] = check.argmin_multiplicity;
    report["argmin_feasible"] = check.argmin_feasible;
    report["constrained_optimum"] =
        check.constrained_optimum ? json(to_bitstring(*check.constrained_optimum))
                                  : json(nullptr);
    report["degenerate_excited"] = check.degenerate_excited;
    report["penalties_separated"] = check.penalties_separated;
    report["warnings"] = check.warnings;
    report["H_c"] = op.cost.to_string();
    report["L"] = op.lyapunov.to_string();
    json pens = json::array();
    for (const auto& pen : op.penalties) pens.push_back(pen.to_string());
    report["penalties"] = pens;
    out << report.dump(2) << '\n';
    return check.ok ? kExitOk : kExitDomainFailure;
  });
}

int cmd_oracle(const std::filesystem::path& problem_path, std::optional<double> gamma,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const QcboProblem p = canonicalize(load_problem(problem_path));
    const BruteForceResult bf = brute_force_optimum(p);
    const std::vector<double> gammas = gammas_for(p, gamma);
    const ConstraintOperator op =
        build_constraint_operator(p, gammas, GammaCheck::kNonNegative);

    json report;
    report["n"] = p.n;
    report["feasible_count"] = bf.feasible_count;
    report["infeasible_count"] = bf.infeasible_count;
    report["unique"] = bf.unique;
    if (bf.has_feasible()) {
      report["optimum"] = {{"bits", to_bitstring(bf.optimum_bits)},
                           {"value", *bf.optimum_value}};
    } else {
      report["optimum"] = nullptr;
    }
    json optima = json::array();
    for (const auto& b : bf.all_optima) optima.push_back(to_bitstring(b));
    report["all_optima"] = optima;
    report["gammas"] = gammas;
    report["cost_spectrum"] = spectrum_json(to_diagonal_vector(op.cost));
    report["lyapunov_spectrum"] = spectrum_json(to_diagonal_vector(op.lyapunov));
    out << report.dump(2) << '\n';
    return bf.has_feasible() ? kExitOk : kExitDomainFailure;
  });
}

int cmd_run(const std::filesystem::path& problem_path, const RunOptions& opts,
            std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const QcboProblem p = canonicalize(load_problem(problem_path));
    RunConfig cfg = opts.config;
    cfg.gammas = gammas_for(p, opts.gamma);
    const RunTrace trace = run(p, cfg);
    const RunOutputs paths = write_run_outputs(trace, opts.out_dir, opts.stem, utc_timestamp());
    if (opts.dump_state) {
      std::ofstream f(*opts.dump_state, std::ios::binary);
      if (!f) throw InputError("cannot write " + opts.dump_state->string());
      write_state_dump(trace.final_state, f);
    }
    if (opts.gnuplot) {
      std::ofstream f(opts.out_dir / (opts.stem.empty() ? "plot.gp" : opts.stem + "_plot.gp"));
      f << gnuplot_script(paths.trace.filename().string());
    }
    if (trace.dt_bound_violations > 0)
      err << "warning: dt exceeded the step-size bound on " << trace.dt_bound_violations
          << " of " << trace.records.size() << " records\n";
    const LayerRecord& last = trace.records.back();
    out << "mode=" << to_string(cfg.mode) << " controller=" << to_string(cfg.controller.kind)
        << " depth=" << cfg.depth << " V=" << format_number(last.lyapunov)
        << " r_a=" << format_number(last.approx_ratio)
        << " P_s=" << format_number(last.success_prob) << '\n';
    return kExitOk;
  });
}

int cmd_sweep(const std::filesystem::path& manifest_path,
              std::optional<std::filesystem::path> out_dir,
              std::optional<std::size_t> jobs, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepManifest m = load_sweep_manifest(manifest_path);
    if (out_dir) m.out_dir = *out_dir;
    if (jobs) m.jobs = std::max<std::size_t>(1, *jobs);
    const QcboProblem p = canonicalize(load_problem(m.problem));
    const auto results = run_sweep(m, p);
    std::size_t failed = 0;
    for (const auto& r : results) {
      if (!r.ok) {
        ++failed;
        err << "run " << r.point.name << " failed: " << r.error << '\n';
      }
    }
    out << results.size() << " runs, " << failed << " failed, summary in "
        << (m.out_dir / "summary.csv").string() << '\n';
    return failed == 0 ? kExitOk : kExitDomainFailure;
  });
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feedback-based quantum optimisation for constrained binary problems"};
  app.require_subcommand(1);

  std::string problem;
  std::optional<double> gamma;

  auto* verify = app.add_subcommand("verify", "check that L encodes the constrained optimum");
  verify->add_option("problem", problem, "problem JSON file")->required();
  verify->add_option("--gamma", gamma, "shared shift parameter");

  auto* oracle = app.add_subcommand("oracle", "brute-force reference report");
  oracle->add_option("problem", problem, "problem JSON file")->required();
  oracle->add_option("--gamma", gamma, "shared shift parameter");

  RunOptions run_opts;
  std::string mode = "falqon-c", controller = "standard";
  std::string out_dir = ".";
  std::string dump_state;
  auto* run_cmd = app.add_subcommand("run", "single feedback run");
  run_cmd->add_option("problem", problem, "problem JSON file")->required();
  run_cmd->add_option("--mode", mode, "falqon or falqon-c")->capture_default_str();
  run_cmd->add_option("--controller", controller,
                      "standard, bang-bang, finite1, finite2, fixed or legacy")
      ->capture_default_str();
  run_cmd->add_option("--K", run_opts.config.controller.K, "controller gain")->capture_default_str();
  run_cmd->add_option("--K1", run_opts.config.controller.K1, "fixed-time gain K1")->capture_default_str();
  run_cmd->add_option("--K2", run_opts.config.controller.K2, "fixed-time gain K2")->capture_default_str();
  run_cmd->add_option("--c1", run_opts.config.controller.c1, "exponent in (0, 1)")->capture_default_str();
  run_cmd->add_option("--dt", run_opts.config.dt, "time step")->capture_default_str();
  run_cmd->add_option("--depth", run_opts.config.depth, "number of layers")->capture_default_str();
  run_cmd->add_option("--gamma", run_opts.gamma, "shared shift parameter");
  run_cmd->add_option("--zeta-init", run_opts.config.zeta_init,
                      "initial control, one value or one per qubit")
      ->delimiter(',');
  run_cmd->add_flag("--monitor-dt-bound", run_opts.config.monitor_dt_bound,
                    "record the step-size bound per layer");
  run_cmd->add_flag("--dt-in-feedback", run_opts.config.dt_in_feedback,
                    "scale the measured commutators by dt before the controller");
  run_cmd->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  run_cmd->add_option("--name", run_opts.stem, "prefix for output file names");
  run_cmd->add_option("--dump-state", dump_state, "write the final state as a binary dump");
  run_cmd->add_flag("--gnuplot", run_opts.gnuplot, "also write a gnuplot script");

  std::string manifest;
  std::optional<std::string> sweep_out;
  std::optional<std::size_t> jobs;
  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep described by a manifest");
  sweep->add_option("manifest", manifest, "sweep manifest JSON")->required();
  sweep->add_option("--out-dir", sweep_out, "override the manifest's output directory");
  sweep->add_option("--jobs", jobs, "concurrent runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputFailure;
  }

  if (*verify) return cmd_verify(problem, gamma, out, err);
  if (*oracle) return cmd_oracle(problem, gamma, out, err);
  if (*run_cmd) {
    const int rc = guarded(err, [&] {
      run_opts.config.mode = parse_mode(mode);
      run_opts.config.controller.kind = parse_controller_kind(controller);
      run_opts.config.validate();
      return kExitOk;
    });
    if (rc != kExitOk) return rc;
    run_opts.out_dir = out_dir;
    if (!dump_state.empty()) run_opts.dump_state = dump_state;
    return cmd_run(problem, run_opts, out, err);
  }
  if (*sweep) {
    std::optional<std::filesystem::path> dir;
    if (sweep_out) dir = *sweep_out;
    return cmd_sweep(manifest, dir, jobs, out, err);
  }
  return kExitInputFailure;
}

}  // namespace fqco::cli
