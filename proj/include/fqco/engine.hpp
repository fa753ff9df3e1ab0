#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fqco/controllers.hpp"
#include "fqco/operators.hpp"
#include "fqco/pauli.hpp"
#include "fqco/problem.hpp"
#include "fqco/statevector.hpp"

namespace fqco {

enum class Mode {
  kFalqon,   // penalised Hamiltonian drives the circuit and the feedback
  kFalqonC,  // H_c drives the circuit, L only enters the feedback
};

std::string_view to_string(Mode mode);  // "falqon" / "falqon-c"
Mode parse_mode(std::string_view name);

struct RunConfig {
  Mode mode = Mode::kFalqonC;
  std::size_t depth = 200;
  double dt = 0.02;
  /// One value for every mixer qubit, or one value per qubit.
  std::vector<double> zeta_init{0.0};
  ControllerSpec controller;
  /// Empty: certified bound for every constraint. One value: broadcast.
  std::vector<double> gammas;
  bool monitor_dt_bound = false;
  /// Feed dt * <i[X_p, L]> to the controller instead of <i[X_p, L]>.
  bool dt_in_feedback = false;

  void validate() const;
};

struct LayerRecord {
  std::size_t k = 0;
  /// Controls applied in layer k (zeta_init for k = 0 and k = 1).
  std::vector<double> zetas;
  double lyapunov = 0.0;
  double approx_ratio = 0.0;
  double success_prob = 0.0;
  std::optional<double> dt_bound;
};

struct CircuitCost {
  std::size_t single_z = 0;
  std::size_t zz = 0;
  std::size_t higher = 0;  // Z strings of weight > 2
};

struct RunTrace {
  RunConfig config;  // gammas resolved
  std::vector<LayerRecord> records;
  std::vector<double> final_probabilities;
  StateVector final_state{0, {Amplitude{1.0}}};
  double omega_min = 0.0;
  double omega_max = 0.0;
  std::vector<BitVector> optimal_bits;
  CircuitCost generator_cost;
  CircuitCost lyapunov_cost;
  std::size_t dt_bound_violations = 0;
  std::optional<EncodingCheck> encoding;
};

/// Layer-by-layer feedback loop. Record 0 is |+>^n; layer l applies the
/// cost exponential, then one X rotation per qubit with zeta_l, then
/// measures w_p = <i[X_p, L]> (times dt when dt_in_feedback is set) to
/// obtain zeta_{l+1}.
RunTrace run(const QcboProblem& problem, const RunConfig& config);

/// Operator norm used by dt_bound: exact for diagonal sums and for sums of
/// single-qubit X terms, coefficient l1 norm (identity included) otherwise.
double spectral_norm_bound(const PauliSum& s);

/// Right-hand side of the step-size condition
///   |<[h_m,L]>| / (2 (2 |h_m| |h_c| + |<[h_m,L]>|) (|h_c| + |h_m| |zeta_k|)).
double dt_bound(const StateVector& s, const PauliSum& h_m, const PauliSum& h_c,
                const PauliSum& l, double zeta_k);

/// Penalised cost H_c + sum_j gamma_j H_p^(j) for the unconstrained baseline.
PauliSum build_falqon_baseline(const QcboProblem& problem,
                               std::span<const double> gammas);

/// Term counts of a diagonal generator. Throws NotDiagonalError otherwise.
CircuitCost circuit_cost_report(const PauliSum& generator);

/// Sum of X_p over all qubits.
PauliSum x_mixer(std::size_t n);

}  // namespace fqco
