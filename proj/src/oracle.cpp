#include "fqco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqco/error.hpp"

namespace fqco {

bool is_feasible(const QcboProblem& p, std::span<const std::uint8_t> bits) {
  for (const auto& v : p.equalities)
    if (std::abs(evaluate_polynomial(v, bits)) > kFeasibilityTolerance)
      return false;
  for (const auto& g : p.inequalities)
    if (evaluate_polynomial(g, bits) > kFeasibilityTolerance) return false;
  return true;
}

BruteForceResult brute_force_optimum(const QcboProblem& p) {
  p.validate();
  if (p.n > kMaxEnumerationQubits)
    throw CapacityError("brute force limited to " +
                        std::to_string(kMaxEnumerationQubits) + " variables");
  BruteForceResult r;
  const std::uint64_t dim = std::uint64_t{1} << p.n;
  double best = 0.0;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    const BitVector bits = bits_from_index(idx, p.n);
    if (!is_feasible(p, bits)) {
      ++r.infeasible_count;
      continue;
    }
    ++r.feasible_count;
    const double value = evaluate_polynomial(p.objective, bits);
    if (!r.optimum_value || value < best - kFeasibilityTolerance) {
      best = value;
      r.optimum_value = value;
      r.all_optima.assign(1, bits);
    } else if (std::abs(value - best) <= kFeasibilityTolerance) {
      r.all_optima.push_back(bits);
    }
  }
  if (r.optimum_value) {
    r.optimum_bits = r.all_optima.front();
    r.unique = r.all_optima.size() == 1;
  }
  return r;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& s) {
  if (s.n() > kMaxDenseQubits)
    throw CapacityError("dense matrices limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits");
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> i(0.0, 1.0);
  Mat id = Mat::Identity(2, 2);
  Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;

  const Eigen::Index dim = Eigen::Index{1} << s.n();
  Mat out = Mat::Zero(dim, dim);
  for (const auto& [str, coeff] : s.terms()) {
    Mat m = Mat::Identity(1, 1);
    for (std::size_t q = 1; q <= s.n(); ++q) {
      const Mat* f = &id;
      switch (str.letter(q)) {
        case Pauli::X: f = &x; break;
        case Pauli::Y: f = &y; break;
        case Pauli::Z: f = &z; break;
        default: break;
      }
      // Qubit 1 is the leftmost factor, hence the most significant bit.
      Mat next(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          next.block(r * 2, c * 2, 2, 2) = m(r, c) * (*f);
      m = std::move(next);
    }
    out += coeff * m;
  }
  return out;
}

double approximation_ratio(double v, double omega_min, double omega_max) {
  constexpr double kSlack = 1e-6;
  if (!(omega_min < omega_max))
    throw InputError("approximation ratio needs omega_min < omega_max");
  if (v < omega_min - kSlack || v > omega_max + kSlack)
    throw InputError("value " + std::to_string(v) + " lies outside [" +
                     std::to_string(omega_min) + ", " +
                     std::to_string(omega_max) + "]");
  const double r = (v - omega_max) / (omega_min - omega_max);
  return std::clamp(r, 0.0, 1.0);
}

double success_probability(const StateVector& s,
                           std::span<const std::uint8_t> y_star) {
  if (y_star.size() != s.n())
    throw DimensionError("bit string length does not match the state");
  return std::norm(s[basis_index(y_star)]);
}

double success_probability(const StateVector& s,
                           const std::vector<BitVector>& optima) {
  double total = 0.0;
  for (const auto& y : optima) total += success_probability(s, y);
  return total;
}

}  // namespace fqco
