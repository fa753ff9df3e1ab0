#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fqco/controllers.hpp"
#include "fqco/error.hpp"

using namespace fqco;

namespace {

constexpr ControllerKind kAllKinds[] = {
    ControllerKind::kStandard,    ControllerKind::kBangBang,
    ControllerKind::kFiniteTime1, ControllerKind::kFiniteTime2,
    ControllerKind::kFixedTime,   ControllerKind::kLegacyFalqon};

ControllerSpec spec_of(ControllerKind k, double K = 1.0) {
  ControllerSpec s;
  s.kind = k;
  s.K = K;
  return s;
}

}  // namespace

TEST(NextControl, ZeroInZeroOut) {
  for (auto k : kAllKinds) EXPECT_EQ(next_control(spec_of(k), 0.0), 0.0) << to_string(k);
}

TEST(NextControl, FormulaExamples) {
  EXPECT_EQ(next_control(spec_of(ControllerKind::kBangBang, 3.5), 0.2), -3.5);
  // -0.1 * 0.1^0.9, evaluated independently
  EXPECT_NEAR(next_control(spec_of(ControllerKind::kFiniteTime1), 0.1),
              -0.012589254117941673, 1e-15);
  EXPECT_NEAR(next_control(spec_of(ControllerKind::kFiniteTime2), 0.1),
              -0.12589254117941673, 1e-15);
  EXPECT_EQ(next_control(spec_of(ControllerKind::kStandard, 2.0), 0.25), -0.5);
  EXPECT_EQ(next_control(spec_of(ControllerKind::kLegacyFalqon, 7.0), 0.25), -0.25);

  ControllerSpec fixed = spec_of(ControllerKind::kFixedTime);
  fixed.K1 = 2.0;
  fixed.K2 = 0.5;
  const double w = 0.3;
  EXPECT_NEAR(next_control(fixed, w),
              -2.0 * std::pow(w, 0.9) - 0.5 * std::pow(w, 1.0 / 0.9), 1e-15);
  EXPECT_NEAR(fixed.c1 * fixed.c2(), 1.0, 1e-12);
}

TEST(NextControl, RejectsBadInput) {
  EXPECT_THROW(next_control(spec_of(ControllerKind::kStandard), std::nan("")), InputError);
  EXPECT_THROW(next_control(spec_of(ControllerKind::kStandard),
                            std::numeric_limits<double>::infinity()),
               InputError);
  EXPECT_THROW(next_control(spec_of(ControllerKind::kStandard, 0.0), 0.1), InputError);
  ControllerSpec bad = spec_of(ControllerKind::kFiniteTime1);
  bad.c1 = 1.0;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(NextControl, ParseNames) {
  EXPECT_EQ(parse_controller_kind("bang-bang"), ControllerKind::kBangBang);
  EXPECT_EQ(parse_controller_kind("finite1"), ControllerKind::kFiniteTime1);
  EXPECT_EQ(parse_controller_kind("fixed"), ControllerKind::kFixedTime);
  for (auto k : kAllKinds) EXPECT_EQ(parse_controller_kind(to_string(k)), k);
  EXPECT_THROW(parse_controller_kind("pid"), InputError);
}

TEST(NextControl, SignOddAndMonotone) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> mag(-6, 1);
  std::uniform_real_distribution<double> gain(0.1, 4);
  std::uniform_real_distribution<double> c1(0.05, 0.95);
  for (int t = 0; t < 20000; ++t) {
    ControllerSpec s = spec_of(kAllKinds[t % 6], gain(rng));
    s.K1 = gain(rng);
    s.K2 = gain(rng);
    s.c1 = c1(rng);
    const double w1 = std::pow(10.0, mag(rng)), w2 = w1 * (1.0 + gain(rng));
    const double z = next_control(s, w1);
    EXPECT_LT(z * w1, 0.0);
    EXPECT_EQ(next_control(s, -w1), -z);
    if (s.kind != ControllerKind::kBangBang)
      EXPECT_LE(std::abs(z), std::abs(next_control(s, w2)));
  }
}

TEST(NextControl, ContinuousAtZeroExceptBangBang) {
  for (auto k : {ControllerKind::kStandard, ControllerKind::kFiniteTime1,
                 ControllerKind::kFiniteTime2, ControllerKind::kFixedTime})
    EXPECT_LT(std::abs(next_control(spec_of(k), 1e-12)), 1e-9);
  EXPECT_EQ(next_control(spec_of(ControllerKind::kBangBang), 1e-300), -1.0);
}

TEST(NextControlsMulti, Examples) {
  const ControllerSpec s = spec_of(ControllerKind::kStandard);
  const std::vector<double> ones{1, 1, 1}, twos{2, 2, 2};
  EXPECT_EQ(next_controls_multi(s, std::vector<double>{0, 0, 0}, ones),
            (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(next_controls_multi(s, std::vector<double>{0.1, -0.2, 0.3}, ones),
            (std::vector<double>{-0.1, 0.2, -0.3}));
  EXPECT_EQ(next_controls_multi(s, std::vector<double>{0.1, -0.2, 0.3}, twos),
            (std::vector<double>{-0.2, 0.4, -0.6}));
  EXPECT_THROW(next_controls_multi(s, std::vector<double>{0.1}, ones), DimensionError);
  EXPECT_THROW(next_controls_multi(s, std::vector<double>{0.1}, std::vector<double>{0.0}),
               InputError);
}
