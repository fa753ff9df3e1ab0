#include "fqco/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "fqco/error.hpp"

namespace fqco {

namespace {

// Hermiticity tolerance on expectations: the imaginary residue of <s|a|s>.
constexpr double kImagResidue = 1e-9;

void require_hermitian(const PauliSum& a) {
  if (!a.is_hermitian())
    throw NonHermitianError("operator has complex coefficients: " +
                            a.to_string());
}

void require_same_n(const StateVector& s, std::size_t n) {
  if (s.n() != n)
    throw DimensionError("state has " + std::to_string(s.n()) +
                         " qubits, operator acts on " + std::to_string(n));
}

// i^k for the Y count of a string: P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>.
Amplitude y_phase(const PauliString& p) {
  static constexpr Amplitude kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[std::popcount(p.x_mask() & p.z_mask()) % 4];
}

}  // namespace

std::size_t qubit_cap() {
  if (const char* env = std::getenv("FQCO_MEM_CAP_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 40)
      throw InputError("FQCO_MEM_CAP_QUBITS must be an integer in 1..40");
    return static_cast<std::size_t>(v);
  }
  return kDefaultQubitCap;
}

StateVector::StateVector(std::size_t n, std::vector<Amplitude> amps)
    : n_(n), amps_(std::move(amps)) {
  if (n >= 63 || amps_.size() != (std::size_t{1} << n))
    throw DimensionError("state on " + std::to_string(n) + " qubits needs 2^" +
                         std::to_string(n) + " amplitudes, got " +
                         std::to_string(amps_.size()));
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
  std::vector<Amplitude> amps(std::size_t{1} << n);
  if (index >= amps.size()) throw DimensionError("basis index out of range");
  amps[index] = 1.0;
  return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

StateVector init_plus_state(std::size_t n, std::size_t cap) {
  if (n < 1) throw DimensionError("need at least one qubit");
  if (n > cap)
    throw CapacityError("state on " + std::to_string(n) +
                        " qubits exceeds the cap of " + std::to_string(cap));
  const std::size_t dim = std::size_t{1} << n;
  return StateVector(n, std::vector<Amplitude>(
                            dim, Amplitude(1.0 / std::sqrt(double(dim)), 0.0)));
}

void apply_diagonal_exponential(StateVector& s, std::span<const double> diag,
                                double dt) {
  if (diag.size() != s.dim())
    throw DimensionError("diagonal has " + std::to_string(diag.size()) +
                         " entries, state has " + std::to_string(s.dim()));
  auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] *= std::polar(1.0, -diag[i] * dt);
}

void apply_x_rotation(StateVector& s, std::size_t qubit, double zeta,
                      double dt) {
  if (qubit < 1 || qubit > s.n())
    throw DimensionError("qubit " + std::to_string(qubit) +
                         " out of range 1.." + std::to_string(s.n()));
  const double theta = zeta * dt;
  const double c = std::cos(theta);
  const Amplitude mis(0.0, -std::sin(theta));
  const std::size_t mask = std::size_t{1} << (s.n() - qubit);
  auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps[i], a1 = amps[i | mask];
    amps[i] = c * a0 + mis * a1;
    amps[i | mask] = mis * a0 + c * a1;
  }
}

void apply_pauli_string_exponential(StateVector& s, const PauliString& p,
                                    double angle) {
  require_same_n(s, p.n());
  if (p.is_identity())
    throw InputError("identity string only contributes a global phase");
  // exp(-i angle P) = cos(angle) I - i sin(angle) P.
  const double c = std::cos(angle);
  const Amplitude mis(0.0, -std::sin(angle));
  const Amplitude phase = y_phase(p);
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  auto amps = s.amplitudes();
  const std::vector<Amplitude> old(amps.begin(), amps.end());
  for (std::uint64_t b = 0; b < old.size(); ++b) {
    // (P psi)[b] = phase(b ^ x) psi[b ^ x]
    const std::uint64_t src = b ^ x;
    const Amplitude sign = (std::popcount(src & z) & 1) ? -1.0 : 1.0;
    amps[b] = c * old[b] + mis * phase * sign * old[src];
  }
}

std::vector<Amplitude> apply_sum(const PauliSum& sum, const StateVector& s) {
  require_same_n(s, sum.n());
  const auto amps = s.amplitudes();
  std::vector<Amplitude> out(amps.size());
  for (const auto& [p, coeff] : sum.terms()) {
    const Amplitude phase = y_phase(p) * coeff;
    const std::uint64_t x = p.x_mask(), z = p.z_mask();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
      const std::uint64_t src = b ^ x;
      const double sign = (std::popcount(src & z) & 1) ? -1.0 : 1.0;
      out[b] += phase * sign * amps[src];
    }
  }
  return out;
}

double expectation(const StateVector& s, const PauliSum& a) {
  require_hermitian(a);
  const auto applied = apply_sum(a, s);
  Amplitude total{};
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    total += std::conj(amps[i]) * applied[i];
  if (std::abs(total.imag()) > kImagResidue * std::max(1.0, std::abs(total)))
    throw NonHermitianError("expectation has imaginary residue " +
                            std::to_string(total.imag()));
  return total.real();
}

double expectation_diagonal(const StateVector& s,
                            std::span<const double> diag) {
  if (diag.size() != s.dim())
    throw DimensionError("diagonal length does not match state");
  double total = 0.0;
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) total += diag[i] * std::norm(amps[i]);
  return total;
}

double commutator_expectation(const StateVector& s, const PauliSum& h,
                              const PauliSum& l) {
  require_hermitian(h);
  require_hermitian(l);
  require_same_n(s, h.n());
  require_same_n(s, l.n());
  // <s|i[h,l]|s> = i(z - conj(z)) with z = <s|h l|s> = <h s | l s>.
  const auto hs = apply_sum(h, s);
  const auto ls = apply_sum(l, s);
  Amplitude z{};
  for (std::size_t i = 0; i < hs.size(); ++i) z += std::conj(hs[i]) * ls[i];
  return -2.0 * z.imag();
}

double commutator_expectation_x(const StateVector& s, std::size_t qubit,
                                std::span<const double> diag_l) {
  if (qubit < 1 || qubit > s.n())
    throw DimensionError("qubit out of range");
  if (diag_l.size() != s.dim())
    throw DimensionError("diagonal length does not match state");
  // z = sum_b conj(psi[b ^ m]) l[b] psi[b]
  const std::size_t mask = std::size_t{1} << (s.n() - qubit);
  const auto amps = s.amplitudes();
  double im = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b)
    im += diag_l[b] * (std::conj(amps[b ^ mask]) * amps[b]).imag();
  return -2.0 * im;
}

namespace {

constexpr char kMagic[8] = {'F', 'Q', 'C', 'O', 'S', 'T', 'A', 'T'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double d) {
  std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

void write_state_dump(const StateVector& s, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(s.n()));
  put_u32(out, 0);
  for (const auto& a : s.amplitudes()) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
}

StateVector read_state_dump(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw ParseError("state dump: bad magic");
  const std::uint32_t n = get_u32(in);
  get_u32(in);
  if (!in || n > qubit_cap()) throw ParseError("state dump: bad qubit count");
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    a = Amplitude(re, im);
  }
  if (!in) throw ParseError("state dump: truncated amplitude data");
  return StateVector(n, std::move(amps));
}

}  // namespace fqco
