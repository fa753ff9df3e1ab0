#include "fqco/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "fqco/error.hpp"
#include "fqco/format.hpp"
#include "fqco/trace_io.hpp"

namespace fqco {

using nlohmann::json;

namespace {

[[noreturn]] void manifest_error(const std::string& pointer, const std::string& what) {
  throw ParseError("sweep manifest: " + pointer + ": " + what);
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) manifest_error(pointer, "expected a number");
  return j.get<double>();
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(what + ": '" + text + "' is not a number");
  }
}

void set_field(RunConfig& cfg, const std::string& key, double v) {
  if (key == "K") cfg.controller.K = v;
  else if (key == "K1") cfg.controller.K1 = v;
  else if (key == "K2") cfg.controller.K2 = v;
  else if (key == "c1") cfg.controller.c1 = v;
  else if (key == "dt") cfg.dt = v;
  else if (key == "gamma") cfg.gammas = {v};
  else throw InputError("unknown numeric setting '" + key + "'");
}

}  // namespace

void apply_config_json(RunConfig& cfg, const json& j, const std::string& pointer) {
  if (!j.is_object()) manifest_error(pointer, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string p = pointer + "/" + key;
    if (key == "mode") {
      if (!value.is_string()) manifest_error(p, "expected a string");
      cfg.mode = parse_mode(value.get<std::string>());
    } else if (key == "controller") {
      if (!value.is_string()) manifest_error(p, "expected a string");
      cfg.controller.kind = parse_controller_kind(value.get<std::string>());
    } else if (key == "depth") {
      if (!value.is_number_unsigned()) manifest_error(p, "expected a non-negative integer");
      cfg.depth = value.get<std::size_t>();
    } else if (key == "zeta_init") {
      if (value.is_array()) {
        cfg.zeta_init.clear();
        for (std::size_t i = 0; i < value.size(); ++i)
          cfg.zeta_init.push_back(number(value[i], p + "/" + std::to_string(i)));
      } else {
        cfg.zeta_init = {number(value, p)};
      }
    } else if (key == "gamma") {
      if (value.is_array()) {
        cfg.gammas.clear();
        for (std::size_t i = 0; i < value.size(); ++i)
          cfg.gammas.push_back(number(value[i], p + "/" + std::to_string(i)));
      } else {
        cfg.gammas = {number(value, p)};
      }
    } else if (key == "monitor_dt_bound" || key == "dt_in_feedback") {
      if (!value.is_boolean()) manifest_error(p, "expected a boolean");
      (key == "monitor_dt_bound" ? cfg.monitor_dt_bound : cfg.dt_in_feedback) =
          value.get<bool>();
    } else if (key == "K" || key == "K1" || key == "K2" || key == "c1" || key == "dt") {
      set_field(cfg, key, number(value, p));
    } else {
      manifest_error(p, "unknown setting");
    }
  }
}

SweepManifest parse_sweep_manifest(std::string_view text,
                                   const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("sweep manifest: malformed JSON at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) manifest_error("", "expected a JSON object");
  SweepManifest m;
  for (const auto& [key, value] : doc.items()) {
    const std::string p = "/" + key;
    if (key == "problem") {
      if (!value.is_string()) manifest_error(p, "expected a path");
      m.problem = base_dir / value.get<std::string>();
    } else if (key == "out_dir") {
      if (!value.is_string()) manifest_error(p, "expected a path");
      m.out_dir = base_dir / value.get<std::string>();
    } else if (key == "jobs") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0)
        manifest_error(p, "expected a positive integer");
      m.jobs = value.get<std::size_t>();
    } else if (key == "base") {
      apply_config_json(m.base, value, p);
    } else if (key == "axes") {
      if (!value.is_object()) manifest_error(p, "expected an object");
      for (const auto& [axis, values] : value.items()) {
        const std::string ap = p + "/" + axis;
        if (std::find(std::begin(kSweepAxes), std::end(kSweepAxes), axis) ==
            std::end(kSweepAxes))
          manifest_error(ap, "unknown axis");
        if (!values.is_array() || values.empty())
          manifest_error(ap, "expected a non-empty array");
        auto& list = m.axes[axis];
        for (std::size_t i = 0; i < values.size(); ++i) {
          const std::string vp = ap + "/" + std::to_string(i);
          if (axis == "controller") {
            if (!values[i].is_string()) manifest_error(vp, "expected a controller name");
            const auto name = values[i].get<std::string>();
            parse_controller_kind(name);
            list.push_back(name);
          } else {
            list.push_back(format_number(number(values[i], vp)));
          }
        }
      }
    } else if (key == "controller_overrides") {
      if (!value.is_object()) manifest_error(p, "expected an object");
      for (const auto& [name, fields] : value.items()) {
        const std::string op = p + "/" + name;
        parse_controller_kind(name);
        if (!fields.is_object()) manifest_error(op, "expected an object");
        for (const auto& [field, v] : fields.items()) {
          if (field != "K" && field != "K1" && field != "K2" && field != "c1")
            manifest_error(op + "/" + field, "only K, K1, K2 and c1 can be overridden");
          m.controller_overrides[name][field] = number(v, op + "/" + field);
        }
      }
    } else {
      manifest_error(p, "unknown field");
    }
  }
  if (m.problem.empty()) manifest_error("/problem", "missing");
  return m;
}

SweepManifest load_sweep_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open sweep manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_manifest(buf.str(), path.parent_path());
}

std::vector<SweepPoint> enumerate_sweep(const SweepManifest& m) {
  std::vector<std::pair<std::string, const std::vector<std::string>*>> axes;
  for (std::string_view name : kSweepAxes) {
    auto it = m.axes.find(std::string(name));
    if (it != m.axes.end()) axes.emplace_back(it->first, &it->second);
  }

  std::vector<SweepPoint> points;
  std::vector<std::size_t> counter(axes.size(), 0);
  while (true) {
    SweepPoint pt;
    pt.config = m.base;
    for (std::size_t a = 0; a < axes.size(); ++a)
      pt.coordinates.emplace_back(axes[a].first, (*axes[a].second)[counter[a]]);

    for (const auto& [axis, value] : pt.coordinates)
      if (axis == "controller") pt.config.controller.kind = parse_controller_kind(value);
    auto ov = m.controller_overrides.find(std::string(to_string(pt.config.controller.kind)));
    if (ov != m.controller_overrides.end())
      for (const auto& [field, v] : ov->second) set_field(pt.config, field, v);
    for (const auto& [axis, value] : pt.coordinates)
      if (axis != "controller") set_field(pt.config, axis, parse_double(value, axis));

    if (pt.coordinates.empty()) {
      pt.name = "run";
    } else {
      for (const auto& [axis, value] : pt.coordinates) {
        if (!pt.name.empty()) pt.name += "_";
        pt.name += axis + "-" + value;
      }
    }
    points.push_back(std::move(pt));

    // Odometer increment, last axis fastest.
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++counter[a] < axes[a].second->size()) break;
      counter[a] = 0;
      if (a == 0) return points;
    }
    if (axes.empty()) return points;
  }
}

std::vector<SweepResult> run_sweep(const SweepManifest& m, const QcboProblem& problem) {
  const std::vector<SweepPoint> points = enumerate_sweep(m);
  std::vector<SweepResult> results(points.size());
  std::filesystem::create_directories(m.out_dir);
  const std::string stamp = utc_timestamp();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      SweepResult& r = results[i];
      r.point = points[i];
      try {
        if (r.point.config.gammas.empty() && problem.default_gamma)
          r.point.config.gammas = {*problem.default_gamma};
        const RunTrace trace = run(problem, r.point.config);
        write_run_outputs(trace, m.out_dir, r.point.name, stamp);
        const LayerRecord& last = trace.records.back();
        r.final_V = last.lyapunov;
        r.final_r_a = last.approx_ratio;
        r.final_P_s = last.success_prob;
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(m.jobs, points.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::ofstream summary(m.out_dir / "summary.csv", std::ios::binary);
  if (!summary) throw InputError("cannot write " + (m.out_dir / "summary.csv").string());
  write_sweep_summary(results, summary);
  return results;
}

void write_sweep_summary(const std::vector<SweepResult>& results, std::ostream& out) {
  out << "name";
  for (std::string_view axis : kSweepAxes) out << ',' << axis;
  out << ",status,V,r_a,P_s\n";
  for (const auto& r : results) {
    out << r.point.name;
    for (std::string_view axis : kSweepAxes) {
      out << ',';
      for (const auto& [name, value] : r.point.coordinates)
        if (name == axis) out << value;
    }
    if (r.ok) {
      out << ",ok," << format_number(r.final_V) << ',' << format_number(r.final_r_a)
          << ',' << format_number(r.final_P_s) << '\n';
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << ",error: " << msg << ",,,\n";
    }
  }
}

}  // namespace fqco
