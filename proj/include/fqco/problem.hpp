#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fqco {

/// Assignment of binary variables; entry j holds x_{j+1} (0 or 1).
using BitVector = std::vector<std::uint8_t>;

/// Basis index of a bit vector with the first variable as the most
/// significant bit: idx(x) = sum_j x_j 2^(n-j).
std::uint64_t basis_index(std::span<const std::uint8_t> bits);
BitVector bits_from_index(std::uint64_t index, std::size_t n);
std::string to_bitstring(std::span<const std::uint8_t> bits);
BitVector parse_bitstring(std::string_view text);

/// Quadratic polynomial x^T Q x + c^T x + a over binary variables.
///
/// Q is kept symmetric: an off-diagonal monomial w*x_i*x_j is stored as
/// Q[i][j] = Q[j][i] = w/2. The diagonal Q[i][i] acts linearly because
/// x_i^2 = x_i on binary inputs.
class BinaryPolynomial {
 public:
  BinaryPolynomial() = default;

  /// Zero polynomial over n variables.
  explicit BinaryPolynomial(std::size_t n);

  /// Throws DimensionError on size mismatch and InputError when Q is not
  /// symmetric (the message names the first offending index pair).
  BinaryPolynomial(std::size_t n, std::vector<double> q_row_major,
                   std::vector<double> c, double a);

  static BinaryPolynomial constant(std::size_t n, double a);

  std::size_t n() const noexcept { return n_; }
  double q(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
  double c(std::size_t i) const { return c_[i]; }
  double a() const noexcept { return a_; }
  std::span<const double> quadratic() const noexcept { return q_; }
  std::span<const double> linear() const noexcept { return c_; }

  /// Coefficient of the monomial x_i in the reduced form (c_i + Q_ii).
  double linear_coefficient(std::size_t i) const { return c_[i] + q(i, i); }
  /// Coefficient of the monomial x_i x_j, i != j, in the reduced form.
  double pair_coefficient(std::size_t i, std::size_t j) const {
    return q(i, j) + q(j, i);
  }

  /// True when no off-diagonal Q entry is nonzero.
  bool is_affine() const noexcept;
  bool is_zero() const noexcept;
  /// All reduced monomial coefficients are integers within `tol`.
  bool has_integer_coefficients(double tol = 1e-9) const noexcept;

  void add_constant(double v) { a_ += v; }
  void add_linear(std::size_t i, double v);
  /// Adds w*x_i*x_j; i == j folds into the linear term.
  void add_pair(std::size_t i, std::size_t j, double w);

  BinaryPolynomial scaled(double factor) const;
  /// Same polynomial over `new_n >= n` variables (new ones unused).
  BinaryPolynomial extended(std::size_t new_n) const;

  friend bool operator==(const BinaryPolynomial&,
                         const BinaryPolynomial&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> q_;
  std::vector<double> c_;
  double a_ = 0.0;
};

double evaluate_polynomial(const BinaryPolynomial& p,
                           std::span<const std::uint8_t> x);
/// Evaluates at the assignment encoded by a basis index.
double evaluate_at_index(const BinaryPolynomial& p, std::uint64_t index);

/// Minimise F(y) subject to V^(q)(y) = 0 and G^(j)(y) <= 0.
struct QcboProblem {
  std::size_t n = 0;
  BinaryPolynomial objective;
  std::vector<BinaryPolynomial> equalities;
  std::vector<BinaryPolynomial> inequalities;
  /// Variables appended by canonicalize() as inequality slack.
  std::size_t slack_bits = 0;
  /// Shift parameter suggested by the problem file, if any.
  std::optional<double> default_gamma;

  /// Throws DimensionError when a member polynomial disagrees on n.
  void validate() const;
  bool is_canonical() const noexcept { return inequalities.empty(); }
  std::size_t original_n() const noexcept { return n - slack_bits; }
};

struct SlackEquality {
  BinaryPolynomial equality;
  std::size_t slack_bits = 0;
};

/// Rewrites g(y) <= 0 as h(y, s) = g(y) + sum_k 2^k s_k = 0 with the
/// fewest binary slack variables that cover the range of -g.
SlackEquality inequality_to_equality(const BinaryPolynomial& g);

/// Smallest positive integer m making every reduced coefficient of m*v an
/// integer; rationals are recognised up to denominator 10^6.
long long normalization_multiplier(const BinaryPolynomial& v);
BinaryPolynomial normalize_constraint(const BinaryPolynomial& v);

/// Only equality constraints with integer coefficients remain; slack
/// variables are appended after the original ones.
QcboProblem canonicalize(const QcboProblem& p);

/// Largest n for which brute-force enumeration is attempted.
inline constexpr std::size_t kMaxEnumerationQubits = 20;

}  // namespace fqco
