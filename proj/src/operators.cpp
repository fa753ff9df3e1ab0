#include "fqco/operators.hpp"

#include <algorithm>
#include <cmath>

#include "fqco/error.hpp"
#include "fqco/oracle.hpp"

namespace fqco {

namespace {

void require_canonical(const QcboProblem& p) {
  p.validate();
  if (!p.is_canonical())
    throw InputError("problem still has inequality constraints; canonicalize first");
}

}  // namespace

PauliSum build_cost_hamiltonian(const QcboProblem& p) {
  p.validate();
  return compile_binary_polynomial(p.objective);
}

PauliSum build_penalty_hamiltonian(const BinaryPolynomial& v) {
  if (!v.has_integer_coefficients())
    throw NormalizationError(
        "penalty constraint needs integer coefficients; normalize it first");
  return compile_binary_polynomial(square_polynomial(v));
}

double gamma_upper_bound_choice(const PauliSum& h_c) {
  return 2.0 * coeff_l1_norm(h_c);
}

std::vector<double> resolve_gammas(const QcboProblem& p,
                                   std::span<const double> gammas) {
  const std::size_t k = p.equalities.size();
  if (gammas.empty()) {
    // A constant objective has no gap to beat; any positive shift works.
    const double bound = gamma_upper_bound_choice(build_cost_hamiltonian(p));
    return std::vector<double>(k, bound > 0.0 ? bound : 1.0);
  }
  if (gammas.size() == 1) return std::vector<double>(k, gammas[0]);
  return {gammas.begin(), gammas.end()};
}

ConstraintOperator build_constraint_operator(const QcboProblem& p,
                                             std::span<const double> gammas,
                                             GammaCheck check) {
  require_canonical(p);
  if (gammas.size() != p.equalities.size())
    throw DimensionError("got " + std::to_string(gammas.size()) +
                         " gammas for " + std::to_string(p.equalities.size()) +
                         " constraints");
  for (double g : gammas) {
    const bool bad = check == GammaCheck::kPositive ? !(g > 0) : !(g >= 0);
    if (bad || !std::isfinite(g))
      throw InputError("gamma " + std::to_string(g) +
                       (check == GammaCheck::kPositive ? " must be positive"
                                                       : " must be non-negative"));
  }

  ConstraintOperator op;
  op.cost = build_cost_hamiltonian(p);
  op.gammas.assign(gammas.begin(), gammas.end());
  op.lyapunov = op.cost;
  for (std::size_t j = 0; j < p.equalities.size(); ++j) {
    op.penalties.push_back(build_penalty_hamiltonian(p.equalities[j]));
    op.lyapunov += op.penalties.back() * gammas[j];
  }
  if (p.n <= kMaxEnumerationQubits)
    op.encoding = verify_ground_state_encoding(op, p);
  return op;
}

EncodingCheck verify_ground_state_encoding(const ConstraintOperator& op,
                                           const QcboProblem& p) {
  constexpr double kTie = 1e-9;
  EncodingCheck r;
  const std::vector<double> diag = to_diagonal_vector(op.lyapunov);

  const auto min_it = std::min_element(diag.begin(), diag.end());
  const auto argmin = static_cast<std::uint64_t>(min_it - diag.begin());
  r.min_value = *min_it;
  r.argmin = bits_from_index(argmin, p.n);
  r.argmin_multiplicity = static_cast<std::size_t>(std::count_if(
      diag.begin(), diag.end(),
      [&](double v) { return std::abs(v - r.min_value) <= kTie; }));

  std::vector<double> sorted = diag;
  std::sort(sorted.begin(), sorted.end());
  r.gap = sorted.size() > 1 ? sorted[1] - sorted[0] : 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] <= kTie && sorted[i] - sorted[0] > kTie) {
      r.degenerate_excited = true;
      break;
    }

  for (const auto& pen : op.penalties) {
    for (double w : to_diagonal_vector(pen))
      if (w < -kTie || (w > kTie && w < 1.0 - kTie)) r.penalties_separated = false;
  }

  r.argmin_feasible = is_feasible(p, r.argmin);
  const BruteForceResult bf = brute_force_optimum(p);
  if (bf.has_feasible()) r.constrained_optimum = bf.optimum_bits;

  if (r.argmin_multiplicity > 1)
    r.warnings.push_back("minimum of L is attained by " +
                         std::to_string(r.argmin_multiplicity) + " basis states");
  if (r.degenerate_excited)
    r.warnings.push_back("L has repeated eigenvalues above the minimum");
  if (!r.argmin_feasible)
    r.warnings.push_back("ground state of L is infeasible; increase gamma");
  if (!bf.has_feasible()) r.warnings.push_back("problem has no feasible assignment");
  if (!r.penalties_separated)
    r.warnings.push_back("a penalty takes values in (0, 1) on some state");

  r.ok = r.argmin_multiplicity == 1 && r.argmin_feasible &&
         r.constrained_optimum && *r.constrained_optimum == r.argmin;
  return r;
}

}  // namespace fqco
