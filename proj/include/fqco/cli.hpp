#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fqco/engine.hpp"

namespace fqco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;
inline constexpr int kExitInputFailure = 2;

struct RunOptions {
  RunConfig config;
  std::optional<double> gamma;
  std::filesystem::path out_dir = ".";
  std::string stem;
  std::optional<std::filesystem::path> dump_state;
  bool gnuplot = false;
};

/// Shift parameters for a canonical problem: the explicit flag, else the
/// problem file's default_gamma, else the certified bound.
std::vector<double> gammas_for(const QcboProblem& p, std::optional<double> gamma);

int cmd_verify(const std::filesystem::path& problem, std::optional<double> gamma,
               std::ostream& out, std::ostream& err);
int cmd_oracle(const std::filesystem::path& problem, std::optional<double> gamma,
               std::ostream& out, std::ostream& err);
int cmd_run(const std::filesystem::path& problem, const RunOptions& opts,
            std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& manifest,
              std::optional<std::filesystem::path> out_dir,
              std::optional<std::size_t> jobs, std::ostream& out, std::ostream& err);

/// Entry point behind the fqco executable.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fqco::cli
