#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fqco/controllers.hpp"
#include "fqco/engine.hpp"
#include "fqco/error.hpp"
#include "fqco/operators.hpp"
#include "fqco/oracle.hpp"
#include "fqco/problem_io.hpp"

namespace py = pybind11;
using namespace fqco;

namespace {

std::vector<double> gamma_list(const QcboProblem& p, std::optional<double> gamma) {
  if (gamma) return {*gamma};
  if (p.default_gamma) return {*p.default_gamma};
  return {};
}

py::dict encoding_dict(const EncodingCheck& c) {
  py::dict d;
  d["ok"] = c.ok;
  d["argmin"] = to_bitstring(c.argmin);
  d["min_value"] = c.min_value;
  d["gap"] = c.gap;
  d["argmin_multiplicity"] = c.argmin_multiplicity;
  d["argmin_feasible"] = c.argmin_feasible;
  d["degenerate_excited"] = c.degenerate_excited;
  d["warnings"] = c.warnings;
  return d;
}

py::dict operators(const QcboProblem& raw, std::optional<double> gamma) {
  const QcboProblem p = canonicalize(raw);
  const auto op = build_constraint_operator(p, resolve_gammas(p, gamma_list(p, gamma)),
                                            GammaCheck::kNonNegative);
  py::dict d;
  d["cost"] = op.cost.to_string();
  d["lyapunov"] = op.lyapunov.to_string();
  std::vector<std::string> pens;
  for (const auto& h : op.penalties) pens.push_back(h.to_string());
  d["penalties"] = pens;
  d["gammas"] = op.gammas;
  d["cost_diagonal"] = to_diagonal_vector(op.cost);
  d["lyapunov_diagonal"] = to_diagonal_vector(op.lyapunov);
  return d;
}

py::dict verify(const QcboProblem& raw, std::optional<double> gamma) {
  const QcboProblem p = canonicalize(raw);
  const auto op = build_constraint_operator(p, resolve_gammas(p, gamma_list(p, gamma)),
                                            GammaCheck::kNonNegative);
  return encoding_dict(verify_ground_state_encoding(op, p));
}

py::dict brute_force(const QcboProblem& p) {
  const auto r = brute_force_optimum(p);
  py::dict d;
  d["optimum_value"] = r.optimum_value;
  d["optimum_bits"] = r.has_feasible() ? py::object(py::str(to_bitstring(r.optimum_bits)))
                                       : py::object(py::none());
  d["feasible_count"] = r.feasible_count;
  d["infeasible_count"] = r.infeasible_count;
  d["unique"] = r.unique;
  return d;
}

py::dict run_problem(const QcboProblem& raw, const std::string& mode,
                     const std::string& controller, double K, double K1, double K2,
                     double c1, double dt, std::size_t depth, std::optional<double> gamma,
                     std::vector<double> zeta_init, bool monitor_dt_bound,
                     bool dt_in_feedback) {
  const QcboProblem p = canonicalize(raw);
  RunConfig cfg;
  cfg.mode = parse_mode(mode);
  cfg.controller.kind = parse_controller_kind(controller);
  cfg.controller.K = K;
  cfg.controller.K1 = K1;
  cfg.controller.K2 = K2;
  cfg.controller.c1 = c1;
  cfg.dt = dt;
  cfg.depth = depth;
  cfg.gammas = gamma_list(p, gamma);
  cfg.zeta_init = std::move(zeta_init);
  cfg.monitor_dt_bound = monitor_dt_bound;
  cfg.dt_in_feedback = dt_in_feedback;

  RunTrace t;
  {
    py::gil_scoped_release release;
    t = run(p, cfg);
  }
  std::vector<std::size_t> k;
  std::vector<std::vector<double>> zetas;
  std::vector<double> v, ra, ps;
  std::vector<std::optional<double>> bound;
  for (const auto& r : t.records) {
    k.push_back(r.k);
    zetas.push_back(r.zetas);
    v.push_back(r.lyapunov);
    ra.push_back(r.approx_ratio);
    ps.push_back(r.success_prob);
    bound.push_back(r.dt_bound);
  }
  std::vector<std::string> optima;
  for (const auto& b : t.optimal_bits) optima.push_back(to_bitstring(b));

  py::dict d;
  d["k"] = k;
  d["zetas"] = zetas;
  d["V"] = v;
  d["r_a"] = ra;
  d["P_s"] = ps;
  d["dt_bound"] = bound;
  d["final_probabilities"] = t.final_probabilities;
  d["omega_min"] = t.omega_min;
  d["omega_max"] = t.omega_max;
  d["optimal_bits"] = optima;
  d["gammas"] = t.config.gammas;
  d["dt_bound_violations"] = t.dt_bound_violations;
  return d;
}

double control(const std::string& kind, double w, double K, double K1, double K2,
               double c1) {
  ControllerSpec s;
  s.kind = parse_controller_kind(kind);
  s.K = K;
  s.K1 = K1;
  s.K2 = K2;
  s.c1 = c1;
  return next_control(s, w);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Feedback-based quantum optimisation for constrained binary problems";

  // InputError is also a ValueError; translators run newest first.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  static PyObject* input_error = PyErr_NewException(
      "fqco._core.InputError", py::make_tuple(base, py::handle(PyExc_ValueError)).ptr(),
      nullptr);
  m.attr("InputError") = py::handle(input_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(input_error, e.what());
    }
  });

  py::class_<QcboProblem>(m, "Problem")
      .def_readonly("n", &QcboProblem::n)
      .def_readonly("slack_bits", &QcboProblem::slack_bits)
      .def_readonly("default_gamma", &QcboProblem::default_gamma)
      .def_property_readonly("num_equalities",
                             [](const QcboProblem& p) { return p.equalities.size(); })
      .def_property_readonly("num_inequalities",
                             [](const QcboProblem& p) { return p.inequalities.size(); })
      .def("evaluate",
           [](const QcboProblem& p, const std::string& bits) {
             return evaluate_polynomial(p.objective, parse_bitstring(bits));
           })
      .def("canonical", [](const QcboProblem& p) { return canonicalize(p); })
      .def("to_json", [](const QcboProblem& p) { return problem_to_json(p).dump(); })
      .def("__repr__", [](const QcboProblem& p) {
        return "<Problem n=" + std::to_string(p.n) + " equalities=" +
               std::to_string(p.equalities.size()) + " inequalities=" +
               std::to_string(p.inequalities.size()) + ">";
      });

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("parse_problem", &parse_problem_json, py::arg("text"));
  m.def("operators", &operators, py::arg("problem"), py::arg("gamma") = py::none());
  m.def("verify", &verify, py::arg("problem"), py::arg("gamma") = py::none());
  m.def("brute_force", &brute_force, py::arg("problem"));
  m.def("run", &run_problem, py::arg("problem"), py::arg("mode") = "falqon-c",
        py::arg("controller") = "standard", py::arg("K") = 1.0, py::arg("K1") = 1.0,
        py::arg("K2") = 1.0, py::arg("c1") = 0.9, py::arg("dt") = 0.02,
        py::arg("depth") = 200, py::arg("gamma") = py::none(),
        py::arg("zeta_init") = std::vector<double>{0.0},
        py::arg("monitor_dt_bound") = false, py::arg("dt_in_feedback") = false);
  m.def("next_control", &control, py::arg("kind"), py::arg("w"), py::arg("K") = 1.0,
        py::arg("K1") = 1.0, py::arg("K2") = 1.0, py::arg("c1") = 0.9);
  m.def("pauli_commutator",
        [](const std::string& a, const std::string& b, std::size_t n) {
          return commutator_i(PauliSum::parse(a, n), PauliSum::parse(b, n)).to_string();
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 0);
}
