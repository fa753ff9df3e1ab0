#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fqco/pauli.hpp"

namespace fqco {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultQubitCap = 24;

/// Statevector qubit cap: FQCO_MEM_CAP_QUBITS when set, else 24.
std::size_t qubit_cap();

/// Dense 2^n amplitude vector; index convention matches PauliString
/// (qubit 1 is the most significant bit).
class StateVector {
 public:
  StateVector(std::size_t n, std::vector<Amplitude> amps);

  static StateVector basis(std::size_t n, std::uint64_t index);

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept;
  std::vector<double> probabilities() const;

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// |+>^n. Throws CapacityError above `cap` qubits.
StateVector init_plus_state(std::size_t n, std::size_t cap = qubit_cap());

// The apply_* operations update the state in place.

/// amps[i] *= exp(-i d[i] dt).
void apply_diagonal_exponential(StateVector& s, std::span<const double> diag,
                                double dt);

/// exp(-i zeta dt X_qubit), qubit 1-based.
void apply_x_rotation(StateVector& s, std::size_t qubit, double zeta, double dt);

/// exp(-i angle P) for a single non-identity string P.
void apply_pauli_string_exponential(StateVector& s, const PauliString& p,
                                    double angle);

/// Matrix-free product sum * state.
std::vector<Amplitude> apply_sum(const PauliSum& sum, const StateVector& s);

/// <s|a|s>; a must be Hermitian.
double expectation(const StateVector& s, const PauliSum& a);
/// <s|D|s> for a diagonal operator given by its diagonal.
double expectation_diagonal(const StateVector& s, std::span<const double> diag);

/// <s| i[h, l] |s>, evaluated as -2 Im <s| h l |s>.
double commutator_expectation(const StateVector& s, const PauliSum& h,
                              const PauliSum& l);
/// Fast path of commutator_expectation for h = X_qubit and diagonal l.
double commutator_expectation_x(const StateVector& s, std::size_t qubit,
                                std::span<const double> diag_l);

/// Binary dump: "FQCOSTAT", u32 n, u32 reserved, then 2^n (re, im) pairs,
/// all little-endian.
void write_state_dump(const StateVector& s, std::ostream& out);
StateVector read_state_dump(std::istream& in);

}  // namespace fqco
