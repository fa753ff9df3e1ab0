#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fqco/problem.hpp"
#include "fqco/statevector.hpp"

namespace fqco::test {

// minimise -2x1 - 5x2 - 3x3 - 2x1x2 s.t. 1 - x1 - 3x2 - x3 = 0
inline QcboProblem example_problem() {
  QcboProblem p;
  p.n = 3;
  p.objective = BinaryPolynomial(3, {0, -1, 0, -1, 0, 0, 0, 0, 0}, {-2, -5, -3}, 0);
  p.equalities.push_back(BinaryPolynomial(3, {}, {-1, -3, -1}, 1));
  p.default_gamma = 3.0;
  return p;
}

inline BinaryPolynomial random_quadratic(std::size_t n, std::mt19937_64& rng,
                                         int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> coeff(lo, hi);
  BinaryPolynomial p(n);
  p.add_constant(coeff(rng));
  for (std::size_t i = 0; i < n; ++i) {
    p.add_linear(i, coeff(rng));
    for (std::size_t j = i + 1; j < n; ++j) p.add_pair(i, j, coeff(rng));
  }
  return p;
}

inline BinaryPolynomial random_affine(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  BinaryPolynomial p(n);
  p.add_constant(coeff(rng));
  for (std::size_t i = 0; i < n; ++i) p.add_linear(i, coeff(rng));
  return p;
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(n, std::move(amps));
}

}  // namespace fqco::test
