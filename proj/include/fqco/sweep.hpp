#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fqco/engine.hpp"
#include "fqco/problem.hpp"

namespace fqco {

/// Axes a sweep may vary, in the order they are enumerated (the last one
/// varies fastest).
inline constexpr std::string_view kSweepAxes[] = {"gamma", "controller", "K",
                                                  "c1", "dt"};

/// Sweep description, usually read from JSON:
///
///   {
///     "problem": "qcbo3.json",            // relative to the manifest
///     "out_dir": "sweep",
///     "jobs": 4,
///     "base": {"mode": "falqon-c", "controller": "standard", "K": 1,
///              "dt": 0.02, "depth": 200, "gamma": 3, "zeta_init": 0},
///     "axes": {"controller": ["standard", "bang-bang"], "gamma": [1, 3]},
///     "controller_overrides": {"bang-bang": {"K": 3.5}}
///   }
///
/// Overrides apply to runs with the named controller; an explicit axis
/// value takes precedence over an override.
struct SweepManifest {
  std::filesystem::path problem;
  RunConfig base;
  /// Axis name -> values, as text (numbers or controller names).
  std::map<std::string, std::vector<std::string>> axes;
  std::map<std::string, std::map<std::string, double>> controller_overrides;
  std::filesystem::path out_dir = "sweep";
  std::size_t jobs = 1;
};

struct SweepPoint {
  std::string name;  // encodes the coordinates, "run" when there are no axes
  std::vector<std::pair<std::string, std::string>> coordinates;
  RunConfig config;
};

struct SweepResult {
  SweepPoint point;
  bool ok = false;
  std::string error;
  double final_V = 0.0;
  double final_r_a = 0.0;
  double final_P_s = 0.0;
};

/// Applies the run-level keys shared by "base" and the CLI flags
/// (mode, controller, K, K1, K2, c1, dt, depth, gamma, zeta_init,
/// monitor_dt_bound, dt_in_feedback).
void apply_config_json(RunConfig& cfg, const nlohmann::json& j,
                       const std::string& pointer);

SweepManifest parse_sweep_manifest(std::string_view text,
                                   const std::filesystem::path& base_dir);
SweepManifest load_sweep_manifest(const std::filesystem::path& path);

/// Cartesian product of the axes, each coordinate exactly once.
std::vector<SweepPoint> enumerate_sweep(const SweepManifest& m);

/// Runs every point on up to `jobs` threads, writes per-run outputs and
/// summary.csv into out_dir. Failures are recorded per run.
std::vector<SweepResult> run_sweep(const SweepManifest& m, const QcboProblem& problem);

void write_sweep_summary(const std::vector<SweepResult>& results, std::ostream& out);

}  // namespace fqco
