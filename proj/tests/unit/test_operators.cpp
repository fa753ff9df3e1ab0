#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fqco/error.hpp"
#include "fqco/operators.hpp"
#include "fqco/oracle.hpp"
#include "support.hpp"

using namespace fqco;

namespace {

void expect_diag(const PauliSum& s, const std::vector<double>& expected) {
  const auto d = to_diagonal_vector(s);
  ASSERT_EQ(d.size(), expected.size());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], expected[i], 1e-12) << i;
}

}  // namespace

TEST(CostHamiltonian, Examples) {
  const auto p = test::example_problem();
  expect_diag(build_cost_hamiltonian(p), {0, -3, -5, -8, -2, -5, -9, -12});

  QcboProblem zero;
  zero.n = 2;
  zero.objective = BinaryPolynomial(2);
  EXPECT_TRUE(build_cost_hamiltonian(zero).empty());

  zero.objective = BinaryPolynomial::constant(2, 4.0);
  EXPECT_TRUE(build_cost_hamiltonian(zero).approx_equal(PauliSum::identity(2, 4.0)));
}

TEST(PenaltyHamiltonian, Examples) {
  expect_diag(build_penalty_hamiltonian(test::example_problem().equalities[0]),
              {1, 0, 4, 9, 0, 1, 9, 16});
  EXPECT_TRUE(build_penalty_hamiltonian(BinaryPolynomial(3)).empty());
  expect_diag(build_penalty_hamiltonian(BinaryPolynomial(2, {}, {1, -1}, 0)), {0, 1, 1, 0});
  EXPECT_THROW(build_penalty_hamiltonian(BinaryPolynomial(1, {}, {0.5}, 0)),
               NormalizationError);
}

TEST(GammaBound, Examples) {
  const auto hc = build_cost_hamiltonian(test::example_problem());
  EXPECT_DOUBLE_EQ(gamma_upper_bound_choice(hc), 13.0);
  EXPECT_EQ(gamma_upper_bound_choice(PauliSum(2)), 0.0);
  const auto d = to_diagonal_vector(hc);
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  EXPECT_NEAR(*hi - *lo, 12.0, 1e-12);
  EXPECT_LE(*hi - *lo, gamma_upper_bound_choice(hc));
}

TEST(ConstraintOperator, ExampleWithGammaThree) {
  const auto p = test::example_problem();
  const std::vector<double> g{3.0};
  const auto op = build_constraint_operator(p, g);
  expect_diag(op.lyapunov, {3, -3, 7, 19, -2, -2, 18, 36});
  EXPECT_TRUE(op.lyapunov.approx_equal(PauliSum::parse(
      "-3*Z1 - 10.5*Z2 - 3*Z3 + 4*Z1Z2 + 1.5*Z1Z3 + 4.5*Z2Z3 + 9.5*I", 3)));
  EXPECT_TRUE(op.lyapunov.approx_equal(op.cost + op.penalties[0] * 3.0));
  EXPECT_TRUE(commutator_i(op.lyapunov, op.cost).empty());
  ASSERT_TRUE(op.encoding.has_value());
  EXPECT_TRUE(op.encoding->ok);
}

TEST(ConstraintOperator, RejectsBadGammas) {
  const auto p = test::example_problem();
  const std::vector<double> zero{0.0}, two{1.0, 2.0}, neg{-1.0};
  EXPECT_THROW(build_constraint_operator(p, zero), InputError);
  EXPECT_THROW(build_constraint_operator(p, neg), InputError);
  EXPECT_THROW(build_constraint_operator(p, two), DimensionError);
  EXPECT_NO_THROW(build_constraint_operator(p, zero, GammaCheck::kNonNegative));

  QcboProblem raw = p;
  raw.inequalities.push_back(BinaryPolynomial(3, {}, {1, 1, 0}, -1));
  const std::vector<double> g{3.0};
  EXPECT_THROW(build_constraint_operator(raw, g), InputError);
}

TEST(EncodingCheck, ExampleGammaThree) {
  const auto p = test::example_problem();
  const std::vector<double> g{3.0};
  const auto op = build_constraint_operator(p, g);
  const auto r = verify_ground_state_encoding(op, p);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.argmin, (BitVector{0, 0, 1}));
  EXPECT_DOUBLE_EQ(r.min_value, -3.0);
  EXPECT_DOUBLE_EQ(r.gap, 1.0);
  EXPECT_EQ(r.argmin_multiplicity, 1u);
  // -2 appears twice above the minimum
  EXPECT_TRUE(r.degenerate_excited);
}

TEST(EncodingCheck, ExampleGammaZeroFails) {
  const auto p = test::example_problem();
  const std::vector<double> g{0.0};
  const auto op = build_constraint_operator(p, g, GammaCheck::kNonNegative);
  const auto r = verify_ground_state_encoding(op, p);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.argmin, (BitVector{1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.min_value, -12.0);
  EXPECT_FALSE(r.argmin_feasible);
}

TEST(EncodingCheck, UnconstrainedDependsOnUniqueness) {
  QcboProblem p;
  p.n = 2;
  p.objective = BinaryPolynomial(2, {}, {-1, -2}, 0);
  auto op = build_constraint_operator(p, {});
  EXPECT_TRUE(verify_ground_state_encoding(op, p).ok);

  p.objective = BinaryPolynomial(2, {}, {-1, 0}, 0);
  op = build_constraint_operator(p, {});
  const auto r = verify_ground_state_encoding(op, p);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.argmin_multiplicity, 2u);
}

TEST(ConstraintOperator, SpectrumSplitsIntoCostPlusPenalty) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ug(0.5, 5.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 10;
    QcboProblem p;
    p.n = n;
    p.objective = test::random_quadratic(n, rng);
    p.equalities.push_back(test::random_affine(n, rng));
    p.equalities.push_back(test::random_affine(n, rng));
    const std::vector<double> g{ug(rng), ug(rng)};
    const auto op = build_constraint_operator(p, g);
    const auto d = to_diagonal_vector(op.lyapunov);
    for (std::uint64_t idx = 0; idx < d.size(); ++idx) {
      const auto x = bits_from_index(idx, n);
      double expected = evaluate_polynomial(p.objective, x);
      for (std::size_t j = 0; j < 2; ++j) {
        const double v = evaluate_polynomial(p.equalities[j], x);
        expected += g[j] * v * v;
      }
      ASSERT_NEAR(d[idx], expected, 1e-9);
    }
  }
}

TEST(ConstraintOperator, RaisingGammaNeverLowersTheSpectrum) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 5;
    QcboProblem p;
    p.n = n;
    p.objective = test::random_quadratic(n, rng);
    p.equalities.push_back(test::random_affine(n, rng));
    const std::vector<double> lo{1.0}, hi{2.5};
    const auto a = to_diagonal_vector(build_constraint_operator(p, lo).lyapunov);
    const auto b = to_diagonal_vector(build_constraint_operator(p, hi).lyapunov);
    for (std::uint64_t idx = 0; idx < a.size(); ++idx) {
      EXPECT_GE(b[idx], a[idx] - 1e-12);
      if (is_feasible(p, bits_from_index(idx, n))) EXPECT_NEAR(b[idx], a[idx], 1e-12);
    }
  }
}

TEST(ConstraintOperator, CertifiedGammaEncodesUniqueOptimum) {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 50; ++t) {
    const std::size_t n = 2 + t % 9;
    QcboProblem p;
    p.n = n;
    p.objective = test::random_quadratic(n, rng);
    p.equalities.push_back(test::random_affine(n, rng));
    const auto bf = brute_force_optimum(p);
    if (!bf.has_feasible() || !bf.unique) continue;
    ++checked;
    const auto op = build_constraint_operator(p, resolve_gammas(p, {}));
    const auto r = verify_ground_state_encoding(op, p);
    EXPECT_TRUE(r.argmin_feasible) << "trial " << t;
    EXPECT_TRUE(r.ok) << "trial " << t;
    EXPECT_EQ(r.argmin, bf.optimum_bits);
  }
  EXPECT_GE(checked, 20);
}

TEST(ResolveGammas, BroadcastAndDefault) {
  auto p = test::example_problem();
  p.equalities.push_back(BinaryPolynomial(3, {}, {1, 0, -1}, 0));
  const std::vector<double> one{2.0};
  EXPECT_EQ(resolve_gammas(p, one), (std::vector<double>{2.0, 2.0}));
  EXPECT_EQ(resolve_gammas(p, {}), (std::vector<double>{13.0, 13.0}));
}

TEST(ResolveGammas, ConstantObjectiveFallsBackToOne) {
  QcboProblem p;
  p.n = 1;
  p.objective = BinaryPolynomial::constant(1, 2.0);
  p.equalities.push_back(BinaryPolynomial(1, {}, {1}, -1));
  EXPECT_EQ(resolve_gammas(p, {}), (std::vector<double>{1.0}));
}
