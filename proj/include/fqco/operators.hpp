#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqco/pauli.hpp"
#include "fqco/problem.hpp"

namespace fqco {

/// Outcome of checking that the ground state of L is the constrained
/// optimum.
struct EncodingCheck {
  bool ok = false;
  BitVector argmin;                 // first minimiser of diag(L)
  double min_value = 0.0;
  double gap = 0.0;                 // second-smallest minus smallest entry
  std::size_t argmin_multiplicity = 0;
  bool argmin_feasible = false;
  /// Some eigenvalue above the minimum is repeated. Only a warning.
  bool degenerate_excited = false;
  /// Every penalty diagonal is 0 on feasible states and >= 1 elsewhere.
  bool penalties_separated = true;
  std::optional<BitVector> constrained_optimum;  // brute-force reference
  std::vector<std::string> warnings;
};

/// L = H_c + sum_j gamma_j H_p^(j) together with its parts.
struct ConstraintOperator {
  PauliSum lyapunov;
  PauliSum cost;
  std::vector<PauliSum> penalties;
  std::vector<double> gammas;
  /// Attached by build_constraint_operator when n is small enough to
  /// enumerate.
  std::optional<EncodingCheck> encoding;
};

PauliSum build_cost_hamiltonian(const QcboProblem& p);

/// Diagonal operator with eigenvalue v(y)^2. v must be affine with integer
/// coefficients.
PauliSum build_penalty_hamiltonian(const BinaryPolynomial& v);

/// 2 * coeff_l1_norm(h_c): a shift that is always large enough.
double gamma_upper_bound_choice(const PauliSum& h_c);

enum class GammaCheck {
  kPositive,     // every gamma_j > 0
  kNonNegative,  // gamma_j = 0 allowed, for diagnostics
};

ConstraintOperator build_constraint_operator(
    const QcboProblem& p, std::span<const double> gammas,
    GammaCheck check = GammaCheck::kPositive);

/// Brute-force comparison of diag(L) with the constrained optimum of p.
/// Diagnostic only; degeneracy is reported through the flags.
EncodingCheck verify_ground_state_encoding(const ConstraintOperator& op,
                                           const QcboProblem& p);

/// Broadcasts a single gamma to every equality, or fills in the
/// certified bound (1 when that bound is 0) when `gammas` is empty.
std::vector<double> resolve_gammas(const QcboProblem& p,
                                   std::span<const double> gammas);

}  // namespace fqco
