#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fqco/error.hpp"
#include "fqco/oracle.hpp"
#include "fqco/problem.hpp"
#include "support.hpp"

using namespace fqco;

TEST(BasisIndex, QubitOneIsMostSignificant) {
  EXPECT_EQ(basis_index(BitVector{0, 0, 1}), 1u);
  EXPECT_EQ(basis_index(BitVector{1, 0, 0}), 4u);
  EXPECT_EQ(basis_index(BitVector{1, 1, 1}), 7u);
  EXPECT_EQ(to_bitstring(bits_from_index(6, 3)), "110");
  EXPECT_EQ(parse_bitstring("011"), (BitVector{0, 1, 1}));
  for (std::uint64_t i = 0; i < 64; ++i)
    EXPECT_EQ(basis_index(bits_from_index(i, 6)), i);
}

TEST(BinaryPolynomial, RejectsAsymmetricQ) {
  try {
    BinaryPolynomial(2, {0, 1, 2, 0}, {0, 0}, 0);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(BinaryPolynomial, AddPairSplitsSymmetrically) {
  BinaryPolynomial p(2);
  p.add_pair(0, 1, 4.0);
  EXPECT_EQ(p.q(0, 1), 2.0);
  EXPECT_EQ(p.q(1, 0), 2.0);
  EXPECT_EQ(p.pair_coefficient(0, 1), 4.0);
  p.add_pair(1, 1, 3.0);
  EXPECT_EQ(p.linear_coefficient(1), 3.0);
}

TEST(Evaluate, ExampleObjectiveAndConstraint) {
  const auto p = test::example_problem();
  EXPECT_EQ(evaluate_polynomial(p.objective, BitVector{1, 1, 1}), -12.0);
  EXPECT_EQ(evaluate_polynomial(p.equalities[0], BitVector{0, 0, 1}), 0.0);
  EXPECT_EQ(evaluate_polynomial(p.objective, BitVector{0, 0, 0}), 0.0);
  EXPECT_THROW(evaluate_polynomial(p.objective, BitVector{1, 0}), DimensionError);
}

TEST(Evaluate, AllZerosGivesConstant) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto p = test::random_quadratic(4, rng);
    EXPECT_EQ(evaluate_polynomial(p, BitVector(4, 0)), p.a());
  }
}

TEST(Evaluate, DiagonalWeightMovesFreelyIntoLinearPart) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 4;
    auto p = test::random_quadratic(n, rng);
    std::vector<double> q(p.quadratic().begin(), p.quadratic().end());
    std::vector<double> c(p.linear().begin(), p.linear().end());
    for (std::size_t i = 0; i < n; ++i) {
      const double shift = u(rng);
      q[i * n + i] += shift;
      c[i] -= shift;
    }
    const BinaryPolynomial moved(n, q, c, p.a());
    for (std::uint64_t idx = 0; idx < 16; ++idx)
      EXPECT_NEAR(evaluate_at_index(p, idx), evaluate_at_index(moved, idx), 1e-12);
  }
}

TEST(InequalityToEquality, SingleSlackBit) {
  const BinaryPolynomial g(1, {}, {1}, -1);
  const auto r = inequality_to_equality(g);
  EXPECT_EQ(r.slack_bits, 1u);
  EXPECT_EQ(r.equality, BinaryPolynomial(2, {}, {1, 1}, -1));
}

TEST(InequalityToEquality, BinaryEncodedSlack) {
  const BinaryPolynomial g(2, {}, {1, 1}, -2);
  const auto r = inequality_to_equality(g);
  EXPECT_EQ(r.slack_bits, 2u);
  EXPECT_EQ(r.equality, BinaryPolynomial(4, {}, {1, 1, 1, 2}, -2));
}

TEST(InequalityToEquality, NoSlackWhenMinimumIsZero) {
  const BinaryPolynomial g(1, {}, {1}, 0);
  const auto r = inequality_to_equality(g);
  EXPECT_EQ(r.slack_bits, 0u);
  EXPECT_EQ(r.equality, g);
}

TEST(InequalityToEquality, Errors) {
  EXPECT_THROW(inequality_to_equality(BinaryPolynomial(1, {}, {0.5}, -1)),
               NormalizationError);
  EXPECT_THROW(inequality_to_equality(BinaryPolynomial(1, {}, {1}, 1)),
               InfeasibleConstraintError);
}

TEST(NormalizeConstraint, Examples) {
  EXPECT_EQ(normalize_constraint(BinaryPolynomial(1, {}, {0.5}, -0.5)),
            BinaryPolynomial(1, {}, {1}, -1));
  const BinaryPolynomial integral(2, {}, {1, -3}, 0);
  EXPECT_EQ(normalize_constraint(integral), integral);
  EXPECT_EQ(normalization_multiplier(integral), 1);

  const BinaryPolynomial thirds(2, {}, {1.0 / 3.0, 0.5}, -1);
  EXPECT_EQ(normalization_multiplier(thirds), 6);
  const auto r = normalize_constraint(thirds);
  EXPECT_EQ(r, BinaryPolynomial(2, {}, {2, 3}, -6));
  for (std::uint64_t idx = 0; idx < 4; ++idx)
    EXPECT_EQ(std::abs(evaluate_at_index(thirds, idx)) < 1e-12,
              evaluate_at_index(r, idx) == 0.0);
}

TEST(NormalizeConstraint, RejectsIrrational) {
  EXPECT_THROW(normalize_constraint(BinaryPolynomial(1, {}, {std::sqrt(2.0)}, -1)),
               NormalizationError);
}

TEST(Canonicalize, IntegerEqualitiesUnchanged) {
  const auto p = test::example_problem();
  const auto c = canonicalize(p);
  EXPECT_EQ(c.n, 3u);
  EXPECT_EQ(c.equalities.size(), 1u);
  EXPECT_EQ(c.equalities[0], p.equalities[0]);
  EXPECT_EQ(c.objective, p.objective);
  EXPECT_TRUE(c.is_canonical());
}

TEST(Canonicalize, InequalityAddsSlack) {
  QcboProblem p;
  p.n = 2;
  p.objective = BinaryPolynomial(2, {}, {-1, -1}, 0);
  p.inequalities.push_back(BinaryPolynomial(2, {}, {1, 1}, -2));
  const auto c = canonicalize(p);
  EXPECT_EQ(c.n, 4u);
  EXPECT_EQ(c.slack_bits, 2u);
  EXPECT_EQ(c.original_n(), 2u);
  EXPECT_EQ(c.equalities.size(), 1u);
  EXPECT_TRUE(c.inequalities.empty());
}

TEST(Canonicalize, PreservesFeasibleProjection) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + t % 3;
    QcboProblem p;
    p.n = n;
    p.objective = test::random_quadratic(n, rng);
    p.equalities.push_back(test::random_affine(n, rng));
    auto g = test::random_affine(n, rng);
    g.add_constant(-2);
    p.inequalities.push_back(g);
    QcboProblem c;
    try {
      c = canonicalize(p);
    } catch (const InfeasibleConstraintError&) {
      continue;
    }
    std::set<std::uint64_t> before, after;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx)
      if (is_feasible(p, bits_from_index(idx, n))) before.insert(idx);
    const std::size_t extra = c.n - n;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << c.n); ++idx)
      if (is_feasible(c, bits_from_index(idx, c.n))) after.insert(idx >> extra);
    EXPECT_EQ(before, after) << "trial " << t;
  }
}
