#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fqco/engine.hpp"

namespace fqco {

/// Columns k, zeta_1..zeta_P, V, r_a, P_s, dt_bound (empty when the bound
/// was not monitored). Numbers use the shortest round-trip form.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

/// Columns bitstring, probability.
void write_probabilities_csv(const RunTrace& trace, std::ostream& out);

/// Config echo, operator term counts and final metrics. The only output
/// carrying a timestamp, and only when `timestamp` is non-empty.
nlohmann::json trace_metadata(const RunTrace& trace,
                              const std::string& timestamp = {});

/// gnuplot script plotting V, r_a and P_s against k from `trace_csv`.
std::string gnuplot_script(const std::string& trace_csv);

struct RunOutputs {
  std::filesystem::path trace;
  std::filesystem::path probabilities;
  std::filesystem::path metadata;
};

/// <dir>/trace.csv etc., or <dir>/<stem>_trace.csv when a stem is given.
RunOutputs output_paths(const std::filesystem::path& dir, const std::string& stem);

/// Writes all three files; creates `dir` if needed.
RunOutputs write_run_outputs(const RunTrace& trace,
                             const std::filesystem::path& dir,
                             const std::string& stem,
                             const std::string& timestamp);

std::string utc_timestamp();

}  // namespace fqco
