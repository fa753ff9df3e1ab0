#include "fqco/problem.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fqco/error.hpp"

namespace fqco {

std::uint64_t basis_index(std::span<const std::uint8_t> bits) {
  std::uint64_t idx = 0;
  for (std::uint8_t b : bits) idx = (idx << 1) | (b ? 1u : 0u);
  return idx;
}

BitVector bits_from_index(std::uint64_t index, std::size_t n) {
  BitVector bits(n);
  for (std::size_t j = 0; j < n; ++j)
    bits[j] = static_cast<std::uint8_t>((index >> (n - 1 - j)) & 1u);
  return bits;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitVector parse_bitstring(std::string_view text) {
  BitVector bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw InputError("bit string may only contain 0 and 1: '" +
                       std::string(text) + "'");
    bits.push_back(ch == '1');
  }
  return bits;
}

BinaryPolynomial::BinaryPolynomial(std::size_t n)
    : n_(n), q_(n * n, 0.0), c_(n, 0.0) {}

BinaryPolynomial::BinaryPolynomial(std::size_t n, std::vector<double> q_row_major,
                                   std::vector<double> c, double a)
    : n_(n), q_(std::move(q_row_major)), c_(std::move(c)), a_(a) {
  if (q_.empty()) q_.assign(n * n, 0.0);
  if (c_.empty()) c_.assign(n, 0.0);
  if (q_.size() != n * n)
    throw DimensionError("Q has " + std::to_string(q_.size()) +
                         " entries, expected " + std::to_string(n * n));
  if (c_.size() != n)
    throw DimensionError("c has " + std::to_string(c_.size()) +
                         " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q(i, j) != q(j, i)) {
        std::ostringstream msg;
        msg << "Q is not symmetric: Q[" << i << "][" << j << "] = " << q(i, j)
            << " but Q[" << j << "][" << i << "] = " << q(j, i);
        throw InputError(msg.str());
      }
    }
  }
}

BinaryPolynomial BinaryPolynomial::constant(std::size_t n, double a) {
  BinaryPolynomial p(n);
  p.a_ = a;
  return p;
}

bool BinaryPolynomial::is_affine() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && q(i, j) != 0.0) return false;
  return true;
}

bool BinaryPolynomial::is_zero() const noexcept {
  if (a_ != 0.0) return false;
  for (double v : q_)
    if (v != 0.0) return false;
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

namespace {

bool near_integer(double v, double tol) {
  return std::abs(v - std::round(v)) <= tol * std::max(1.0, std::abs(v));
}

}  // namespace

bool BinaryPolynomial::has_integer_coefficients(double tol) const noexcept {
  if (!near_integer(a_, tol)) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!near_integer(linear_coefficient(i), tol)) return false;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!near_integer(pair_coefficient(i, j), tol)) return false;
  }
  return true;
}

void BinaryPolynomial::add_linear(std::size_t i, double v) {
  if (i >= n_) throw DimensionError("variable index out of range");
  c_[i] += v;
}

void BinaryPolynomial::add_pair(std::size_t i, std::size_t j, double w) {
  if (i >= n_ || j >= n_) throw DimensionError("variable index out of range");
  if (i == j) {
    c_[i] += w;
    return;
  }
  q_[i * n_ + j] += w / 2;
  q_[j * n_ + i] += w / 2;
}

BinaryPolynomial BinaryPolynomial::scaled(double factor) const {
  BinaryPolynomial r = *this;
  for (double& v : r.q_) v *= factor;
  for (double& v : r.c_) v *= factor;
  r.a_ *= factor;
  return r;
}

BinaryPolynomial BinaryPolynomial::extended(std::size_t new_n) const {
  if (new_n < n_) throw DimensionError("cannot shrink a polynomial");
  BinaryPolynomial r(new_n);
  for (std::size_t i = 0; i < n_; ++i) {
    r.c_[i] = c_[i];
    for (std::size_t j = 0; j < n_; ++j) r.q_[i * new_n + j] = q(i, j);
  }
  r.a_ = a_;
  return r;
}

double evaluate_polynomial(const BinaryPolynomial& p,
                           std::span<const std::uint8_t> x) {
  const std::size_t n = p.n();
  if (x.size() != n)
    throw DimensionError("assignment has " + std::to_string(x.size()) +
                         " entries, polynomial has " + std::to_string(n) +
                         " variables");
  double value = p.a();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > 1) throw DimensionError("assignment entries must be 0 or 1");
    if (!x[i]) continue;
    value += p.c(i);
    for (std::size_t j = 0; j < n; ++j)
      if (x[j]) value += p.q(i, j);
  }
  return value;
}

double evaluate_at_index(const BinaryPolynomial& p, std::uint64_t index) {
  return evaluate_polynomial(p, bits_from_index(index, p.n()));
}

void QcboProblem::validate() const {
  auto check = [this](const BinaryPolynomial& poly, const std::string& what) {
    if (poly.n() != n)
      throw DimensionError(what + " has " + std::to_string(poly.n()) +
                           " variables, problem has " + std::to_string(n));
  };
  check(objective, "objective");
  for (std::size_t q = 0; q < equalities.size(); ++q)
    check(equalities[q], "equality " + std::to_string(q));
  for (std::size_t j = 0; j < inequalities.size(); ++j)
    check(inequalities[j], "inequality " + std::to_string(j));
  if (slack_bits > n) throw DimensionError("slack_bits exceeds n");
}

namespace {

constexpr long long kMaxDenominator = 1'000'000;

// Smallest denominator q <= kMaxDenominator with v ~= p/q, via continued
// fraction convergents. Returns 0 when none exists.
long long rational_denominator(double v) {
  if (!std::isfinite(v)) return 0;
  const double tol = 1e-13 * std::max(1.0, std::abs(v));
  double x = std::abs(v);
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(std::abs(v) - static_cast<double>(h) / k) <= tol) return k;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    const auto a = static_cast<long long>(std::floor(x));
    frac = x - std::floor(x);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > kMaxDenominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return 0;
}

}  // namespace

long long normalization_multiplier(const BinaryPolynomial& v) {
  long long m = 1;
  auto absorb = [&m](double coeff) {
    const long long d = rational_denominator(coeff);
    if (d == 0) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "coefficient " << coeff
          << " is not a rational with denominator <= " << kMaxDenominator;
      throw NormalizationError(msg.str());
    }
    m = std::lcm(m, d);
    if (m > kMaxDenominator * kMaxDenominator)
      throw NormalizationError("common denominator grows beyond 10^12");
  };
  absorb(v.a());
  for (std::size_t i = 0; i < v.n(); ++i) {
    absorb(v.linear_coefficient(i));
    for (std::size_t j = i + 1; j < v.n(); ++j) absorb(v.pair_coefficient(i, j));
  }
  return m;
}

BinaryPolynomial normalize_constraint(const BinaryPolynomial& v) {
  const long long m = normalization_multiplier(v);
  if (m == 1 && v.has_integer_coefficients(0.0)) return v;
  const auto factor = static_cast<double>(m);
  // Rebuild from rounded reduced coefficients so the result is exactly
  // integral; the diagonal of Q is folded into c.
  const std::size_t n = v.n();
  BinaryPolynomial r(n);
  r.add_constant(std::round(v.a() * factor));
  for (std::size_t i = 0; i < n; ++i) {
    r.add_linear(i, std::round(v.linear_coefficient(i) * factor));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = std::round(v.pair_coefficient(i, j) * factor);
      if (w != 0.0) r.add_pair(i, j, w);
    }
  }
  return r;
}

namespace {

double enumerate_minimum(const BinaryPolynomial& g) {
  if (g.n() > kMaxEnumerationQubits)
    throw CapacityError("brute-force minimum limited to " +
                        std::to_string(kMaxEnumerationQubits) + " variables");
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t dim = std::uint64_t{1} << g.n();
  for (std::uint64_t idx = 0; idx < dim; ++idx)
    best = std::min(best, evaluate_at_index(g, idx));
  return best;
}

std::size_t slack_width(const BinaryPolynomial& g) {
  if (!g.has_integer_coefficients())
    throw NormalizationError(
        "inequality needs integer coefficients; normalize it first");
  const double g_min = std::round(enumerate_minimum(g));
  if (g_min > 0)
    throw InfeasibleConstraintError(
        "inequality is violated by every assignment (minimum " +
        std::to_string(static_cast<long long>(g_min)) + ")");
  const auto range = static_cast<std::uint64_t>(-g_min);
  std::size_t bits = 0;
  while (((std::uint64_t{1} << bits) - 1) < range) ++bits;
  return bits;
}

// g over its own variables, widened to total_n with slack bits starting at
// `offset`; slack k carries weight 2^k.
BinaryPolynomial with_slack(const BinaryPolynomial& g, std::size_t total_n,
                            std::size_t offset, std::size_t bits) {
  BinaryPolynomial h = g.extended(total_n);
  for (std::size_t k = 0; k < bits; ++k)
    h.add_linear(offset + k, static_cast<double>(std::uint64_t{1} << k));
  return h;
}

}  // namespace

SlackEquality inequality_to_equality(const BinaryPolynomial& g) {
  const std::size_t bits = slack_width(g);
  return {with_slack(g, g.n() + bits, g.n(), bits), bits};
}

QcboProblem canonicalize(const QcboProblem& p) {
  p.validate();
  std::vector<BinaryPolynomial> normalized_ineq;
  std::vector<std::size_t> widths;
  std::size_t total = p.n;
  for (const auto& g : p.inequalities) {
    normalized_ineq.push_back(normalize_constraint(g));
    widths.push_back(slack_width(normalized_ineq.back()));
    total += widths.back();
  }

  QcboProblem out;
  out.n = total;
  out.slack_bits = p.slack_bits + (total - p.n);
  out.default_gamma = p.default_gamma;
  out.objective = total == p.n ? p.objective : p.objective.extended(total);
  for (const auto& v : p.equalities) {
    BinaryPolynomial nv = normalize_constraint(v);
    out.equalities.push_back(total == p.n ? std::move(nv) : nv.extended(total));
  }
  std::size_t offset = p.n;
  for (std::size_t j = 0; j < normalized_ineq.size(); ++j) {
    out.equalities.push_back(
        with_slack(normalized_ineq[j], total, offset, widths[j]));
    offset += widths[j];
  }
  return out;
}

}  // namespace fqco
