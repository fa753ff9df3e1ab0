#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fqco/pauli.hpp"
#include "fqco/problem.hpp"
#include "fqco/statevector.hpp"

namespace fqco {

/// Feasibility tolerance on |V(y)| (and on G(y) <= tol for inequalities).
inline constexpr double kFeasibilityTolerance = 1e-9;

struct BruteForceResult {
  std::optional<double> optimum_value;  // empty when nothing is feasible
  BitVector optimum_bits;               // first optimum in index order
  std::vector<BitVector> all_optima;
  std::size_t feasible_count = 0;
  std::size_t infeasible_count = 0;
  bool unique = false;

  bool has_feasible() const noexcept { return optimum_value.has_value(); }
};

bool is_feasible(const QcboProblem& p, std::span<const std::uint8_t> bits);

/// Exhaustive search over {0,1}^n, n <= 20. An empty feasible set is
/// reported through has_feasible(), not thrown.
BruteForceResult brute_force_optimum(const QcboProblem& p);

inline constexpr std::size_t kMaxDenseQubits = 10;

/// Kronecker-built 2^n x 2^n matrix of a Pauli sum, n <= 10.
Eigen::MatrixXcd dense_matrix(const PauliSum& s);

/// (V - omega_max) / (omega_min - omega_max). Values outside the
/// spectrum by at most 1e-6 are clamped; beyond that InputError.
double approximation_ratio(double v, double omega_min, double omega_max);

/// |<y*|s>|^2.
double success_probability(const StateVector& s,
                           std::span<const std::uint8_t> y_star);
/// Summed over a set of equally optimal bit strings.
double success_probability(const StateVector& s,
                           const std::vector<BitVector>& optima);

}  // namespace fqco
