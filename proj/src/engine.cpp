#include "fqco/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqco/error.hpp"
#include "fqco/oracle.hpp"

namespace fqco {

std::string_view to_string(Mode mode) {
  return mode == Mode::kFalqon ? "falqon" : "falqon-c";
}

Mode parse_mode(std::string_view name) {
  if (name == "falqon") return Mode::kFalqon;
  if (name == "falqon-c") return Mode::kFalqonC;
  throw InputError("unknown mode '" + std::string(name) +
                   "' (expected falqon or falqon-c)");
}

void RunConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw InputError("dt must be positive");
  if (zeta_init.empty()) throw InputError("zeta_init must not be empty");
  for (double z : zeta_init)
    if (!std::isfinite(z)) throw InputError("zeta_init must be finite");
  controller.validate();
}

double spectral_norm_bound(const PauliSum& s) {
  if (s.empty()) return 0.0;
  if (s.is_diagonal()) {
    double m = 0.0;
    for (double v : to_diagonal_vector(s)) m = std::max(m, std::abs(v));
    return m;
  }
  // For commuting single-qubit X terms on distinct qubits the l1 norm is
  // exact; in general it is an upper bound.
  double l1 = 0.0;
  for (const auto& [str, c] : s.terms()) l1 += std::abs(c);
  return l1;
}

double dt_bound(const StateVector& s, const PauliSum& h_m, const PauliSum& h_c,
                const PauliSum& l, double zeta_k) {
  // |<[h_m, L]>| = |<i[h_m, L]>| since the commutator is anti-Hermitian.
  const double comm = std::abs(commutator_expectation(s, h_m, l));
  if (comm == 0.0) return 0.0;
  const double nm = spectral_norm_bound(h_m);
  const double nc = spectral_norm_bound(h_c);
  return comm / (2.0 * (2.0 * nm * nc + comm) * (nc + nm * std::abs(zeta_k)));
}

PauliSum build_falqon_baseline(const QcboProblem& problem,
                               std::span<const double> gammas) {
  return build_constraint_operator(problem, gammas).lyapunov;
}

CircuitCost circuit_cost_report(const PauliSum& generator) {
  if (!generator.is_diagonal())
    throw NotDiagonalError("circuit cost is defined for diagonal generators");
  CircuitCost cost;
  for (const auto& [str, c] : generator.terms()) {
    switch (str.weight()) {
      case 0: break;
      case 1: ++cost.single_z; break;
      case 2: ++cost.zz; break;
      default: ++cost.higher; break;
    }
  }
  return cost;
}

PauliSum x_mixer(std::size_t n) {
  PauliSum h(n);
  for (std::size_t q = 1; q <= n; ++q)
    h.add_term(PauliString::single(n, q, Pauli::X), 1.0);
  return h.simplify();
}

namespace {

constexpr double kNormDrift = 1e-9;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

RunTrace run(const QcboProblem& problem, const RunConfig& config) {
  config.validate();
  problem.validate();
  if (!problem.is_canonical())
    throw InputError("problem still has inequality constraints; canonicalize first");
  const std::size_t n = problem.n;
  if (n < 1) throw InputError("problem has no variables");
  if (n > qubit_cap())
    throw CapacityError("problem needs " + std::to_string(n) +
                        " qubits, cap is " + std::to_string(qubit_cap()));
  if (config.zeta_init.size() != 1 && config.zeta_init.size() != n)
    throw InputError("zeta_init needs 1 or " + std::to_string(n) + " values");

  RunTrace trace;
  trace.config = config;
  trace.config.gammas = resolve_gammas(problem, config.gammas);

  const ConstraintOperator op =
      build_constraint_operator(problem, trace.config.gammas);
  trace.encoding = op.encoding;
  const std::vector<double> diag_l = to_diagonal_vector(op.lyapunov);
  const std::vector<double> diag_c = to_diagonal_vector(op.cost);
  const bool penalised = config.mode == Mode::kFalqon;
  const std::vector<double>& diag_gen = penalised ? diag_l : diag_c;
  trace.generator_cost = circuit_cost_report(penalised ? op.lyapunov : op.cost);
  trace.lyapunov_cost = circuit_cost_report(op.lyapunov);

  trace.omega_min = *std::min_element(diag_l.begin(), diag_l.end());
  trace.omega_max = *std::max_element(diag_l.begin(), diag_l.end());
  if (!(trace.omega_min < trace.omega_max))
    throw InputError("L has a single eigenvalue; nothing to optimise");

  // Constrained optimum y* from the diagonals: feasible states have zero
  // penalty, and the optimum minimises H_c among them.
  {
    std::vector<std::vector<double>> pen_diags;
    for (const auto& pen : op.penalties) pen_diags.push_back(to_diagonal_vector(pen));
    double best = 0.0;
    bool any = false;
    for (std::uint64_t idx = 0; idx < diag_c.size(); ++idx) {
      bool feasible = true;
      for (const auto& d : pen_diags)
        if (std::abs(d[idx]) > kFeasibilityTolerance) feasible = false;
      if (!feasible) continue;
      if (!any || diag_c[idx] < best - kFeasibilityTolerance) {
        best = diag_c[idx];
        trace.optimal_bits.assign(1, bits_from_index(idx, n));
        any = true;
      } else if (std::abs(diag_c[idx] - best) <= kFeasibilityTolerance) {
        trace.optimal_bits.push_back(bits_from_index(idx, n));
      }
    }
  }

  const double norm_gen = max_abs(diag_gen);
  const auto norm_mix = static_cast<double>(n);
  const std::vector<double> gains(n, config.controller.K);

  StateVector state = init_plus_state(n);
  std::vector<double> zetas =
      config.zeta_init.size() == 1 ? std::vector<double>(n, config.zeta_init[0])
                                   : config.zeta_init;

  auto record = [&](std::size_t k) {
    LayerRecord rec;
    rec.k = k;
    rec.zetas = zetas;
    rec.lyapunov = expectation_diagonal(state, diag_l);
    if (!std::isfinite(rec.lyapunov))
      throw EngineError(k, "Lyapunov value is not finite");
    rec.approx_ratio =
        approximation_ratio(rec.lyapunov, trace.omega_min, trace.omega_max);
    rec.success_prob = success_probability(state, trace.optimal_bits);
    if (config.monitor_dt_bound) {
      double comm = 0.0;
      for (std::size_t p = 1; p <= n; ++p)
        comm += commutator_expectation_x(state, p, diag_l);
      comm = std::abs(comm);
      const double zeta_k = max_abs(zetas);
      rec.dt_bound = comm == 0.0 ? 0.0
                                 : comm / (2.0 * (2.0 * norm_mix * norm_gen + comm) *
                                           (norm_gen + norm_mix * zeta_k));
      if (comm > 0.0 && config.dt >= *rec.dt_bound) ++trace.dt_bound_violations;
    }
    trace.records.push_back(std::move(rec));
  };

  record(0);
  std::vector<double> w(n);
  const double feedback_scale = config.dt_in_feedback ? config.dt : 1.0;
  for (std::size_t layer = 1; layer <= config.depth; ++layer) {
    apply_diagonal_exponential(state, diag_gen, config.dt);
    for (std::size_t p = 1; p <= n; ++p)
      apply_x_rotation(state, p, zetas[p - 1], config.dt);

    const double norm = state.norm_squared();
    if (!std::isfinite(norm)) throw EngineError(layer, "amplitudes are not finite");
    if (std::abs(norm - 1.0) > kNormDrift)
      throw EngineError(layer, "state norm drifted to " + std::to_string(norm));

    record(layer);

    for (std::size_t p = 1; p <= n; ++p)
      w[p - 1] = feedback_scale * commutator_expectation_x(state, p, diag_l);
    for (double v : w)
      if (!std::isfinite(v)) throw EngineError(layer, "commutator expectation is not finite");
    zetas = next_controls_multi(config.controller, w, gains);
  }

  trace.final_probabilities = state.probabilities();
  trace.final_state = std::move(state);
  return trace;
}

}  // namespace fqco
