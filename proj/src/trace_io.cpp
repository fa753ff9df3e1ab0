#include "fqco/trace_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>

#include "fqco/error.hpp"
#include "fqco/format.hpp"

namespace fqco {

using nlohmann::json;

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  const std::size_t p = trace.records.empty() ? 0 : trace.records.front().zetas.size();
  out << "k";
  for (std::size_t i = 1; i <= p; ++i) out << ",zeta_" << i;
  out << ",V,r_a,P_s,dt_bound\n";
  for (const auto& r : trace.records) {
    out << r.k;
    for (double z : r.zetas) out << ',' << format_number(z);
    out << ',' << format_number(r.lyapunov) << ',' << format_number(r.approx_ratio)
        << ',' << format_number(r.success_prob) << ',';
    if (r.dt_bound) out << format_number(*r.dt_bound);
    out << '\n';
  }
}

void write_probabilities_csv(const RunTrace& trace, std::ostream& out) {
  const std::size_t n = trace.final_state.n();
  out << "bitstring,probability\n";
  for (std::size_t idx = 0; idx < trace.final_probabilities.size(); ++idx)
    out << to_bitstring(bits_from_index(idx, n)) << ','
        << format_number(trace.final_probabilities[idx]) << '\n';
}

namespace {

json cost_json(const CircuitCost& c) {
  return json{{"single_z", c.single_z}, {"zz", c.zz}, {"higher", c.higher}};
}

}  // namespace

json trace_metadata(const RunTrace& trace, const std::string& timestamp) {
  const RunConfig& cfg = trace.config;
  json meta;
  meta["mode"] = std::string(to_string(cfg.mode));
  meta["depth"] = cfg.depth;
  meta["dt"] = cfg.dt;
  meta["zeta_init"] = cfg.zeta_init;
  meta["gammas"] = cfg.gammas;
  meta["monitor_dt_bound"] = cfg.monitor_dt_bound;
  meta["controller"] = {{"kind", std::string(to_string(cfg.controller.kind))},
                        {"K", cfg.controller.K},
                        {"K1", cfg.controller.K1},
                        {"K2", cfg.controller.K2},
                        {"c1", cfg.controller.c1},
                        {"c2", cfg.controller.c2()},
                        {"law", cfg.dt_in_feedback ? "zeta_p = -K f(dt * <i[X_p, L]>)"
                                                   : "zeta_p = -K f(<i[X_p, L]>)"}};
  meta["dt_in_feedback"] = cfg.dt_in_feedback;
  meta["n"] = trace.final_state.n();
  meta["omega_min"] = trace.omega_min;
  meta["omega_max"] = trace.omega_max;
  json optima = json::array();
  for (const auto& b : trace.optimal_bits) optima.push_back(to_bitstring(b));
  meta["optimal_bits"] = optima;
  meta["generator_terms"] = cost_json(trace.generator_cost);
  meta["lyapunov_terms"] = cost_json(trace.lyapunov_cost);
  meta["dt_bound_violations"] = trace.dt_bound_violations;
  if (trace.encoding) {
    meta["encoding"] = {{"ok", trace.encoding->ok},
                        {"argmin", to_bitstring(trace.encoding->argmin)},
                        {"min_value", trace.encoding->min_value},
                        {"gap", trace.encoding->gap},
                        {"warnings", trace.encoding->warnings}};
  }
  if (!trace.records.empty()) {
    const LayerRecord& last = trace.records.back();
    meta["final"] = {{"V", last.lyapunov},
                     {"r_a", last.approx_ratio},
                     {"P_s", last.success_prob}};
  }
  if (!timestamp.empty()) meta["generated_at"] = timestamp;
  return meta;
}

std::string gnuplot_script(const std::string& trace_csv) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 'layer k'\n";
  s += "set multiplot layout 3,1\n";
  for (const char* col : {"V", "r_a", "P_s"}) {
    s += "plot '" + trace_csv + "' using 'k':'" + col + "' with lines\n";
  }
  s += "unset multiplot\n";
  return s;
}

RunOutputs output_paths(const std::filesystem::path& dir, const std::string& stem) {
  const std::string prefix = stem.empty() ? "" : stem + "_";
  return {dir / (prefix + "trace.csv"), dir / (prefix + "probabilities.csv"),
          dir / (prefix + "metadata.json")};
}

RunOutputs write_run_outputs(const RunTrace& trace, const std::filesystem::path& dir,
                             const std::string& stem, const std::string& timestamp) {
  std::filesystem::create_directories(dir);
  const RunOutputs paths = output_paths(dir, stem);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(paths.trace);
    write_trace_csv(trace, f);
  }
  {
    auto f = open(paths.probabilities);
    write_probabilities_csv(trace, f);
  }
  {
    auto f = open(paths.metadata);
    f << trace_metadata(trace, timestamp).dump(2) << '\n';
  }
  return paths;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace fqco
