#include <gtest/gtest.h>

#include <stdexcept>

#include "noisyfb/error.hpp"
#include "noisyfb/estimators.hpp"
#include "noisyfb/verify.hpp"

using namespace noisyfb;

TEST(Estimators, UnbiasedValues) {
  // p = 0.25 (eps = 0.5): values -(1-eps)/(2 eps) and (1+eps)/(2 eps).
  EXPECT_DOUBLE_EQ(est_unbiased_constant(0, 0.25), -0.5);
  EXPECT_DOUBLE_EQ(est_unbiased_constant(1, 0.25), 1.5);
  EXPECT_DOUBLE_EQ(est_unbiased_constant(1, 0.0), 1.0);
  EXPECT_THROW(est_unbiased_constant(1, 0.5), DomainError);
  EXPECT_THROW(est_unbiased_constant(1, -0.1), DomainError);
}

TEST(Estimators, Raw) {
  EXPECT_EQ(est_raw(0), 0.0);
  EXPECT_EQ(est_raw(1), 1.0);
}

TEST(Estimators, ThresholdKeepsBoundary) {
  EXPECT_EQ(est_threshold_full(1, 0.29, 0.3), 0.0);
  EXPECT_NE(est_threshold_full(1, 0.3, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(est_threshold_full(1, 1.0, 0.3), 1.0);
}

TEST(Estimators, ThresholdMagnitudeBound) {
  for (double theta : {0.05, 0.2, 0.7}) {
    for (int i = 0; i <= 100; ++i) {
      const double eps = i / 100.0;
      for (std::uint8_t c : {0, 1}) {
        ASSERT_LE(std::abs(est_threshold_full(c, eps, theta)), 1.0 / theta + 1.0);
      }
    }
  }
}

TEST(Estimators, BanditImportance) {
  EXPECT_EQ(est_bandit_importance(1, 0.25, false), 0.0);
  EXPECT_DOUBLE_EQ(est_bandit_importance(1, 0.25, true), 4.0);
  EXPECT_EQ(est_bandit_importance(0, 0.25, true), 0.0);
  EXPECT_THROW(est_bandit_importance(1, 0.0, true), std::logic_error);
}

TEST(Estimators, Exp3Threshold) {
  EXPECT_EQ(est_exp3_threshold(1, 0.9, 0.5, 0.5, false), 0.0);
  EXPECT_EQ(est_exp3_threshold(1, 0.4, 0.5, 0.5, true), 0.0);
  EXPECT_DOUBLE_EQ(est_exp3_threshold(1, 0.5, 0.5, 0.5, true), 3.0);
  EXPECT_THROW(est_exp3_threshold(1, 0.9, 0.5, 0.0, true), std::logic_error);
}

TEST(Estimators, DispatchMatchesFreeFunctions) {
  EstimateInput in{std::uint8_t{1}, 0.6, 0.25, true};
  EXPECT_DOUBLE_EQ(estimate(UnbiasedConstant{0.2}, in), est_unbiased_constant(1, 0.2));
  EXPECT_DOUBLE_EQ(estimate(Raw{}, in), 1.0);
  EXPECT_DOUBLE_EQ(estimate(ThresholdFull{0.5}, in), est_threshold_full(1, 0.6, 0.5));
  EXPECT_DOUBLE_EQ(estimate(BanditImportance{}, in), 4.0);
  EXPECT_DOUBLE_EQ(estimate(Exp3Threshold{0.5}, in), est_exp3_threshold(1, 0.6, 0.5, 0.25, true));
  EstimateInput absent{std::nullopt, 0.6, 0.25, false};
  EXPECT_EQ(estimate(BanditImportance{}, absent), 0.0);
  EXPECT_THROW(estimate(Raw{}, absent), std::logic_error);
}

TEST(Estimators, Validation) {
  EXPECT_THROW(validate(UnbiasedConstant{0.5}), ConfigError);
  EXPECT_THROW(validate(ThresholdFull{1.0}), ConfigError);
  EXPECT_THROW(validate(Exp3Threshold{0.0}), ConfigError);
  EXPECT_NO_THROW(validate(ThresholdFull{0.3}));
  EXPECT_TRUE(needs_realized_noise(EstimatorKind{ThresholdFull{}}));
  EXPECT_FALSE(needs_realized_noise(EstimatorKind{Raw{}}));
  EXPECT_TRUE(uses_bandit_feedback(EstimatorKind{Exp3Threshold{}}));
  EXPECT_FALSE(uses_bandit_feedback(EstimatorKind{UnbiasedConstant{}}));
}

TEST(Estimators, UnbiasednessCheckPassesForCorrectInversion) {
  EXPECT_TRUE(check_unbiasedness([](std::uint8_t c, double p) {
                return est_unbiased_constant(c, p);
              }).passed);
}

TEST(Estimators, UnbiasednessCheckCatchesDroppedOffset) {
  const CheckResult r = check_unbiasedness(
      [](std::uint8_t c, double p) { return static_cast<double>(c) / (1.0 - 2.0 * p); });
  EXPECT_FALSE(r.passed) << r.detail;
}
