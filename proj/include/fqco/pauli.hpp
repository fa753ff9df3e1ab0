#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fqco/problem.hpp"

namespace fqco {

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline constexpr std::size_t kMaxPauliQubits = 64;

/// Tensor product of single-qubit Paulis, stored as X and Z bit masks.
///
/// Qubit q (1-based) lives at bit n-q, so masks line up with basis indices:
/// qubit 1 is the most significant bit. Y sets both masks. No phase is
/// stored on the string.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n);
  PauliString(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask);

  /// One letter per qubit, qubit 1 first, e.g. "XIZ".
  static PauliString from_letters(std::string_view letters);
  static PauliString single(std::size_t n, std::size_t qubit, Pauli p);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }

  Pauli letter(std::size_t qubit) const;
  void set(std::size_t qubit, Pauli p);

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  std::size_t weight() const noexcept;

  /// Compact form listing non-identity factors, e.g. "Z1Z2", or "I".
  std::string to_string() const;
  /// Dense form with one letter per qubit.
  std::string letters() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::uint64_t bit(std::size_t qubit) const;

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Display order: weight ascending, then by the lowest-numbered qubit in
/// the support, identity last.
struct TermOrder {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept;
};

struct PauliProduct {
  std::complex<double> phase;
  PauliString string;
};

/// p*q as phase * r, with the phase one of {1, i, -1, -i}.
PauliProduct multiply_strings(const PauliString& p, const PauliString& q);

/// Weighted sum of Pauli strings with complex coefficients.
class PauliSum {
 public:
  using Coefficient = std::complex<double>;
  using TermMap = std::map<PauliString, Coefficient, TermOrder>;

  /// Coefficients whose modulus falls below this are dropped by simplify().
  static constexpr double kDropTolerance = 1e-12;

  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  static PauliSum identity(std::size_t n, Coefficient coeff = 1.0);
  static PauliSum term(const PauliString& s, Coefficient coeff = 1.0);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }

  /// Accumulates into an existing entry; call simplify() afterwards.
  void add_term(const PauliString& s, Coefficient coeff);
  PauliSum& simplify(double tol = kDropTolerance);

  Coefficient coefficient(const PauliString& s) const;
  Coefficient identity_coefficient() const;

  bool is_hermitian(double tol = 1e-12) const noexcept;
  bool is_diagonal() const noexcept;

  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum& operator-=(const PauliSum& rhs);
  PauliSum& operator*=(Coefficient s);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Coefficient s) { return a *= s; }
  friend PauliSum operator*(Coefficient s, PauliSum a) { return a *= s; }
  /// Operator product.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// True when both sums hold the same strings with coefficients within tol.
  bool approx_equal(const PauliSum& other, double tol = 1e-12) const;

  /// Renders e.g. "1.5*Z1 + 3*Z2 - 0.5*Z1Z2 - 5.5*I"; the empty sum is "0".
  std::string to_string() const;
  /// Inverse of to_string(). With n == 0 the qubit count is the largest
  /// qubit index mentioned (at least 1).
  static PauliSum parse(std::string_view text, std::size_t n = 0);

 private:
  void check_dim(const PauliSum& other) const;

  std::size_t n_ = 0;
  TermMap terms_;
};

/// i(ab - ba), simplified. Empty when a and b commute.
PauliSum commutator_i(const PauliSum& a, const PauliSum& b);

/// Substitutes x_j -> (I - Z_j)/2, so the result is diagonal with
/// <x|H|x> = p(x).
PauliSum compile_binary_polynomial(const BinaryPolynomial& p);

/// p(x)^2 reduced with x^2 = x. Throws DegreeOverflowError when p has an
/// off-diagonal quadratic part.
BinaryPolynomial square_polynomial(const BinaryPolynomial& p);

/// Sum of |coefficient| over non-identity strings.
double coeff_l1_norm(const PauliSum& s);

/// Diagonal of a diagonal sum in the basis-index convention. Throws
/// NotDiagonalError when an X or Y factor is present.
std::vector<double> to_diagonal_vector(const PauliSum& s);

}  // namespace fqco
