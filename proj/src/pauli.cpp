#include "fqco/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>

#include "fqco/error.hpp"
#include "fqco/format.hpp"

namespace fqco {

using Complex = std::complex<double>;

PauliString::PauliString(std::size_t n) : n_(n) {
  if (n > kMaxPauliQubits)
    throw CapacityError("Pauli strings support at most 64 qubits");
}

PauliString::PauliString(std::size_t n, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : PauliString(n) {
  const std::uint64_t valid = n == 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << n) - 1;
  if ((x_mask | z_mask) & ~valid)
    throw DimensionError("Pauli mask has bits beyond qubit count");
  x_ = x_mask;
  z_ = z_mask;
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString s(letters.size());
  for (std::size_t q = 1; q <= letters.size(); ++q) {
    switch (letters[q - 1]) {
      case 'I': break;
      case 'X': s.set(q, Pauli::X); break;
      case 'Y': s.set(q, Pauli::Y); break;
      case 'Z': s.set(q, Pauli::Z); break;
      default:
        throw InputError("invalid Pauli letter '" +
                         std::string(1, letters[q - 1]) + "'");
    }
  }
  return s;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli p) {
  PauliString s(n);
  s.set(qubit, p);
  return s;
}

std::uint64_t PauliString::bit(std::size_t qubit) const {
  if (qubit < 1 || qubit > n_)
    throw DimensionError("qubit " + std::to_string(qubit) +
                         " out of range 1.." + std::to_string(n_));
  return std::uint64_t{1} << (n_ - qubit);
}

Pauli PauliString::letter(std::size_t qubit) const {
  const std::uint64_t b = bit(qubit);
  const bool x = x_ & b, z = z_ & b;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(std::size_t qubit, Pauli p) {
  const std::uint64_t b = bit(qubit);
  x_ &= ~b;
  z_ &= ~b;
  if (p == Pauli::X || p == Pauli::Y) x_ |= b;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= b;
}

std::size_t PauliString::weight() const noexcept {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

namespace {

char letter_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    default: return 'I';
  }
}

}  // namespace

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::string out;
  for (std::size_t q = 1; q <= n_; ++q) {
    const Pauli p = letter(q);
    if (p == Pauli::I) continue;
    out.push_back(letter_char(p));
    out += std::to_string(q);
  }
  return out;
}

std::string PauliString::letters() const {
  std::string out;
  for (std::size_t q = 1; q <= n_; ++q) out.push_back(letter_char(letter(q)));
  return out;
}

bool TermOrder::operator()(const PauliString& a,
                           const PauliString& b) const noexcept {
  if (a.n() != b.n()) return a.n() < b.n();
  if (a.is_identity() != b.is_identity()) return b.is_identity();
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  // A larger support mask has its highest bit, i.e. its lowest-numbered
  // qubit, further left.
  if (a.support() != b.support()) return a.support() > b.support();
  if (a.z_mask() != b.z_mask()) return a.z_mask() > b.z_mask();
  return a.x_mask() < b.x_mask();
}

PauliProduct multiply_strings(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n())
    throw DimensionError("cannot multiply Pauli strings on " +
                         std::to_string(p.n()) + " and " +
                         std::to_string(q.n()) + " qubits");
  // Track the phase as a power of i.
  int power = 0;
  std::uint64_t overlap = p.support() & q.support();
  while (overlap) {
    const int pos = std::countr_zero(overlap);
    overlap &= overlap - 1;
    const std::uint64_t b = std::uint64_t{1} << pos;
    // Encode X=1, Y=2, Z=3.
    auto code = [b](const PauliString& s) {
      const bool x = s.x_mask() & b, z = s.z_mask() & b;
      return x && z ? 2 : (x ? 1 : 3);
    };
    const int a = code(p), c = code(q);
    if (a == c) continue;
    // X*Y = iZ, Y*Z = iX, Z*X = iY; the reverse order gives -i.
    power += ((c - a + 3) % 3 == 1) ? 1 : 3;
  }
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPowers[power % 4],
          PauliString(p.n(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask())};
}

PauliSum PauliSum::identity(std::size_t n, Coefficient coeff) {
  PauliSum s(n);
  s.add_term(PauliString(n), coeff);
  return s.simplify();
}

PauliSum PauliSum::term(const PauliString& str, Coefficient coeff) {
  PauliSum s(str.n());
  s.add_term(str, coeff);
  return s.simplify();
}

void PauliSum::add_term(const PauliString& s, Coefficient coeff) {
  if (s.n() != n_)
    throw DimensionError("term on " + std::to_string(s.n()) +
                         " qubits added to a sum on " + std::to_string(n_));
  terms_[s] += coeff;
}

PauliSum& PauliSum::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

PauliSum::Coefficient PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Coefficient{} : it->second;
}

PauliSum::Coefficient PauliSum::identity_coefficient() const {
  return coefficient(PauliString(n_));
}

bool PauliSum::is_hermitian(double tol) const noexcept {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool PauliSum::is_diagonal() const noexcept {
  for (const auto& [s, c] : terms_)
    if (!s.is_diagonal()) return false;
  return true;
}

void PauliSum::check_dim(const PauliSum& other) const {
  if (other.n_ != n_)
    throw DimensionError("Pauli sums act on " + std::to_string(n_) + " and " +
                         std::to_string(other.n_) + " qubits");
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  check_dim(rhs);
  for (const auto& [s, c] : rhs.terms_) terms_[s] += c;
  return simplify();
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) {
  check_dim(rhs);
  for (const auto& [s, c] : rhs.terms_) terms_[s] -= c;
  return simplify();
}

PauliSum& PauliSum::operator*=(Coefficient s) {
  for (auto& [str, c] : terms_) c *= s;
  return simplify();
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  a.check_dim(b);
  PauliSum out(a.n());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, r] = multiply_strings(sa, sb);
      out.add_term(r, phase * ca * cb);
    }
  return out.simplify();
}

bool PauliSum::approx_equal(const PauliSum& other, double tol) const {
  if (other.n_ != n_) return false;
  for (const auto& [s, c] : terms_)
    if (std::abs(c - other.coefficient(s)) > tol) return false;
  for (const auto& [s, c] : other.terms_)
    if (std::abs(c - coefficient(s)) > tol) return false;
  return true;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = c.real() < 0;
      coeff = format_number(std::abs(c.real()));
    } else {
      const double im = c.imag();
      coeff = "(" + format_number(c.real()) + (im < 0 ? "-" : "+") +
              format_number(std::abs(im)) + "i)";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff + "*" + s.to_string();
    first = false;
  }
  return out;
}

namespace {

class SumParser {
 public:
  explicit SumParser(std::string_view text) : text_(text) {}

  struct Term {
    Complex coeff;
    std::vector<std::pair<std::size_t, Pauli>> factors;
  };

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (consume_literal_zero()) return terms;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) {
        if (first) fail("empty expression");
        break;
      }
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Term t = parse_term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      first = false;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("Pauli sum parse error at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  bool consume_literal_zero() {
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '0') {
      ++p;
      while (p < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[p])))
        ++p;
      if (p == text_.size()) {
        pos_ = p;
        return true;
      }
    }
    return false;
  }

  double parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  Term parse_term() {
    Term t{Complex(1.0, 0.0), {}};
    bool has_coeff = false;
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      const double re = parse_number();
      skip_ws();
      if (at_end() || (peek() != '+' && peek() != '-')) fail("expected imaginary part");
      const double sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
      const double im = parse_number();
      if (at_end() || peek() != 'i') fail("expected 'i'");
      ++pos_;
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      t.coeff = Complex(re, sign * im);
      has_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      t.coeff = parse_number();
      has_coeff = true;
    }
    skip_ws();
    if (has_coeff && !at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      if (at_end()) fail("expected a Pauli string after '*'");
    } else if (has_coeff) {
      return t;  // bare constant multiplies the identity
    }
    if (at_end()) fail("expected a Pauli string");
    if (peek() == 'I' && (pos_ + 1 >= text_.size() ||
                          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return t;
    }
    while (!at_end()) {
      const char ch = peek();
      Pauli p;
      if (ch == 'X') p = Pauli::X;
      else if (ch == 'Y') p = Pauli::Y;
      else if (ch == 'Z') p = Pauli::Z;
      else if (ch == 'I') p = Pauli::I;
      else break;
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected qubit index after Pauli letter");
      std::size_t q = 0;
      const char* begin = text_.data() + pos_;
      auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), q);
      if (ec != std::errc{} || q == 0) fail("qubit indices start at 1");
      pos_ += static_cast<std::size_t>(ptr - begin);
      t.factors.emplace_back(q, p);
    }
    if (t.factors.empty()) fail("expected a Pauli string");
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PauliSum PauliSum::parse(std::string_view text, std::size_t n) {
  auto terms = SumParser(text).parse();
  if (n == 0) {
    n = 1;
    for (const auto& t : terms)
      for (const auto& [q, p] : t.factors) n = std::max(n, q);
  }
  PauliSum out(n);
  for (const auto& t : terms) {
    PauliString s(n);
    Complex phase(1.0, 0.0);
    for (const auto& [q, p] : t.factors) {
      if (q > n)
        throw ParseError("qubit index " + std::to_string(q) + " exceeds n = " +
                         std::to_string(n));
      auto [ph, r] = multiply_strings(s, PauliString::single(n, q, p));
      phase *= ph;
      s = r;
    }
    out.add_term(s, phase * t.coeff);
  }
  return out.simplify();
}

PauliSum commutator_i(const PauliSum& a, const PauliSum& b) {
  if (a.n() != b.n())
    throw DimensionError("commutator of sums on " + std::to_string(a.n()) +
                         " and " + std::to_string(b.n()) + " qubits");
  // For strings P, Q: PQ = phase*R and QP = +-phase*R. Only anticommuting
  // pairs survive, each contributing i*2*phase*R.
  PauliSum out(a.n());
  const Complex two_i(0.0, 2.0);
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      const int overlap_x = std::popcount(sa.x_mask() & sb.z_mask());
      const int overlap_z = std::popcount(sa.z_mask() & sb.x_mask());
      if (((overlap_x + overlap_z) & 1) == 0) continue;
      auto [phase, r] = multiply_strings(sa, sb);
      out.add_term(r, two_i * phase * ca * cb);
    }
  return out.simplify();
}

PauliSum compile_binary_polynomial(const BinaryPolynomial& p) {
  // x_i = (I - Z_i)/2 and x_i x_j = (I - Z_i - Z_j + Z_i Z_j)/4.
  const std::size_t n = p.n();
  PauliSum out(n);
  double constant = p.a();
  std::vector<double> z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = p.linear_coefficient(i);
    constant += l / 2;
    z[i] -= l / 2;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = p.pair_coefficient(i, j);
      if (w == 0.0) continue;
      constant += w / 4;
      z[i] -= w / 4;
      z[j] -= w / 4;
      PauliString zz(n);
      zz.set(i + 1, Pauli::Z);
      zz.set(j + 1, Pauli::Z);
      out.add_term(zz, w / 4);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    out.add_term(PauliString::single(n, i + 1, Pauli::Z), z[i]);
  out.add_term(PauliString(n), constant);
  return out.simplify();
}

BinaryPolynomial square_polynomial(const BinaryPolynomial& p) {
  if (!p.is_affine())
    throw DegreeOverflowError(
        "squaring a polynomial with x_i x_j terms leaves the quadratic class");
  const std::size_t n = p.n();
  BinaryPolynomial out(n);
  const double a = p.a();
  out.add_constant(a * a);
  for (std::size_t i = 0; i < n; ++i) {
    const double li = p.linear_coefficient(i);
    out.add_linear(i, 2 * a * li + li * li);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = 2 * li * p.linear_coefficient(j);
      if (w != 0.0) out.add_pair(i, j, w);
    }
  }
  return out;
}

double coeff_l1_norm(const PauliSum& s) {
  double total = 0.0;
  for (const auto& [str, c] : s.terms())
    if (!str.is_identity()) total += std::abs(c);
  return total;
}

std::vector<double> to_diagonal_vector(const PauliSum& s) {
  if (!s.is_diagonal())
    throw NotDiagonalError("sum contains X or Y factors: " + s.to_string());
  if (s.n() >= 40) throw CapacityError("diagonal too large to materialise");
  const std::uint64_t dim = std::uint64_t{1} << s.n();
  std::vector<double> diag(dim, 0.0);
  for (const auto& [str, c] : s.terms()) {
    const double v = c.real();
    const std::uint64_t z = str.z_mask();
    for (std::uint64_t idx = 0; idx < dim; ++idx)
      diag[idx] += (std::popcount(idx & z) & 1) ? -v : v;
  }
  return diag;
}

}  // namespace fqco
