#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "noisyfb/error.hpp"
#include "noisyfb/learners.hpp"

using namespace noisyfb;

namespace {

FeedbackVector full(std::vector<int> bits) {
  FeedbackVector f{FeedbackMode::full_information, {}};
  for (int b : bits) f.values.emplace_back(static_cast<std::uint8_t>(b));
  return f;
}

}  // namespace

TEST(Ews, StartsUniform) {
  const EwsState s(4, 0.1);
  for (double q : select_distribution(s)) EXPECT_DOUBLE_EQ(q, 0.25);
}

TEST(Ews, UpdateMatchesMultiplicativeWeights) {
  EwsState s(3, 0.5);
  const std::vector<double> est{1.0, 0.0, 2.0};
  s = update(s, est);
  const double w0 = std::exp(-0.5);
  const double w2 = std::exp(-1.0);
  const auto q = select_distribution(s);
  const double z = w0 + 1.0 + w2;
  EXPECT_NEAR(q[0], w0 / z, 1e-15);
  EXPECT_NEAR(q[1], 1.0 / z, 1e-15);
  EXPECT_NEAR(q[2], w2 / z, 1e-15);
  EXPECT_EQ(s.round(), 1U);
}

TEST(Ews, DistributionStaysValidAfterLongRuns) {
  // Weights of 1e7 rounds would underflow as raw products.
  EwsState s(3, 1.0);
  const std::vector<double> est{1.0, 0.0, 0.5};
  for (int t = 0; t < 2000; ++t) s.apply(est);
  const auto q = select_distribution(s);
  EXPECT_NEAR(std::accumulate(q.begin(), q.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(q[1], 1.0, 1e-12);
  for (double v : q) EXPECT_TRUE(std::isfinite(v));
}

TEST(Ews, HypothesisViolationNamesAction) {
  EwsState s(2, 1.0);
  const std::vector<double> est{0.0, -1.5};
  try {
    (void)update(s, est);
    FAIL() << "expected HypothesisError";
  } catch (const HypothesisError& e) {
    EXPECT_NE(std::string(e.what()).find("action 1"), std::string::npos) << e.what();
  }
  EXPECT_DOUBLE_EQ(hypothesis_load(1.0, est), 1.5);
  const std::vector<double> edge{-1.0, 0.0};
  EXPECT_NO_THROW((void)update(s, edge));
}

TEST(Ews, RejectsBadParameters) {
  EXPECT_THROW(EwsState(1, 0.1), ConfigError);
  EXPECT_THROW(EwsState(2, 0.0), ConfigError);
  EwsState s(3, 0.1);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW((void)update(s, wrong), ConfigError);
}

TEST(Learner, DistributionIsPositiveForEws) {
  Learner l(Ews{UnbiasedConstant{0.25}, 0.2}, 3);
  const NoiseParamsRound noise = NoiseParamsRound::constant(0.5, 3);
  std::vector<double> est(3);
  for (int t = 0; t < 200; ++t) {
    l.observe(full({1, 0, 1}), &noise, ActionIndex{0}, est);
    const auto q = l.distribution();
    for (double v : q) ASSERT_GT(v, 0.0);
    ASSERT_NEAR(std::accumulate(q.begin(), q.end(), 0.0), 1.0, 1e-12);
  }
  EXPECT_GT(l.distribution()[1], 0.9);
}

TEST(Learner, FollowNoisyLeaderBreaksTiesLow) {
  Learner l(FollowNoisyLeader{}, 3);
  EXPECT_EQ(l.distribution()[0], 1.0);
  std::vector<double> est(3);
  l.observe(full({1, 0, 0}), nullptr, ActionIndex{0}, est);
  EXPECT_EQ(l.distribution()[1], 1.0);
  l.observe(full({0, 1, 0}), nullptr, ActionIndex{1}, est);
  EXPECT_EQ(l.distribution()[2], 1.0);
}

TEST(Learner, UniformNeverMoves) {
  Learner l(UniformRandom{}, 4);
  std::vector<double> est(4);
  l.observe(full({1, 1, 0, 0}), nullptr, ActionIndex{0}, est);
  for (double q : l.distribution()) EXPECT_DOUBLE_EQ(q, 0.25);
}

TEST(Learner, ThresholdNeedsNoise) {
  Learner l(Ews{ThresholdFull{0.3}, 0.1}, 2);
  std::vector<double> est(2);
  EXPECT_THROW(l.observe(full({1, 0}), nullptr, ActionIndex{0}, est), ConfigError);
}

TEST(Learner, EnforceAndCountPolicies) {
  // eta * q^-1 * estimate overshoots on a tiny q under the threshold inversion.
  const NoiseParamsRound noise = NoiseParamsRound::constant(0.5, 2);
  FeedbackVector bandit{FeedbackMode::bandit, {std::uint8_t{0}, std::nullopt}};
  std::vector<double> est(2);
  Learner enforce(Ews{Exp3Threshold{0.5}, 5.0}, 2, HypothesisPolicy::enforce);
  EXPECT_THROW(enforce.observe(bandit, &noise, ActionIndex{0}, est), HypothesisError);
  Learner count(Ews{Exp3Threshold{0.5}, 5.0}, 2, HypothesisPolicy::count);
  count.observe(bandit, &noise, ActionIndex{0}, est);
  EXPECT_EQ(count.hypothesis_violations(), 1U);
  EXPECT_EQ(count.ews_state()->round(), 1U);
}

TEST(Learner, Labels) {
  EXPECT_EQ(describe(LearnerKind{Ews{UnbiasedConstant{}, 0.1}}), "ews-unbiased");
  EXPECT_EQ(describe(LearnerKind{Ews{ThresholdFull{}, 0.1}}), "ew-threshold");
  EXPECT_EQ(describe(LearnerKind{Ews{Exp3Threshold{}, 0.1}}), "exp3-threshold");
  EXPECT_EQ(describe(LearnerKind{FollowNoisyLeader{}}), "follow-noisy-leader");
  EXPECT_EQ(describe(Setting{FeedbackModel::bandit_variable, false}), "bandit-var-unknown");
}

TEST(Rates, FrozenDefaults) {
  // Arbitrary-precision references.
  const Setting full_const{FeedbackModel::full_constant, true};
  const Setting full_var{FeedbackModel::full_variable, true};
  const Setting bandit_var{FeedbackModel::bandit_variable, true};
  EXPECT_NEAR(default_eta(full_const, 0.5, 10'000, 10), 0.007587135646925731, 1e-15);
  EXPECT_NEAR(default_eta(full_var, 0.0, 1'000'000, 10), 1.743721513596412e-4, 1e-16);
  EXPECT_NEAR(default_theta(full_var, 1'000'000, 10), 0.013205004784536852, 1e-15);
  EXPECT_NEAR(default_eta(bandit_var, 0.0, 1'000'000, 2), 6.216419424375857e-5, 1e-17);
  EXPECT_NEAR(default_theta(bandit_var, 1'000'000, 2), 0.011150264054609521, 1e-15);
  const Setting bandit_const{FeedbackModel::bandit_constant, true};
  EXPECT_NEAR(default_eta(bandit_const, 0.5, 10'000, 10), 0.007587135646925731 / std::sqrt(10.0),
              1e-15);
}

TEST(Rates, UnknownVariableNoiseHasNoRate) {
  EXPECT_THROW(default_eta(Setting{FeedbackModel::full_variable, false}, 0.5, 100, 2),
               ConfigError);
  EXPECT_THROW(default_eta(Setting{FeedbackModel::full_constant, true}, 0.5, 1, 2), ConfigError);
  EXPECT_THROW(default_theta(Setting{FeedbackModel::full_constant, true}, 100, 2), ConfigError);
}

TEST(Rates, GeneralRate) {
  EXPECT_NEAR(general_eta(4.0, 10'000, 10), std::sqrt(std::log(10.0) / 40'000.0), 1e-15);
  EXPECT_THROW(general_eta(0.0, 100, 2), DomainError);
}
