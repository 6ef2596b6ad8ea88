#include <gtest/gtest.h>

#include <cmath>

#include "noisyfb/error.hpp"
#include "noisyfb/noise.hpp"

using namespace noisyfb;

TEST(Noise, CorruptedFeedbackMean) {
  RngStream rng(17);
  double ones = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) ones += corrupt(1, 0.5, rng);
  EXPECT_NEAR(ones / n, 0.75, 0.002);
}

TEST(Noise, NoiselessAndPureNoise) {
  RngStream rng(2);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(corrupt(1, 1.0, rng), 1);
    ASSERT_EQ(corrupt(0, 1.0, rng), 0);
  }
  double ones = 0.0;
  for (int i = 0; i < 100000; ++i) ones += corrupt(0, 0.0, rng);
  EXPECT_NEAR(ones / 1e5, 0.5, 0.006);
}

TEST(Noise, ConstantRoundParameters) {
  RngStream rng(1);
  const NoiseParamsRound r = sample_noise_round(NoiseModel::constant(0.4), 3, rng);
  ASSERT_EQ(r.size(), 3U);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(r.eps[i], 0.4);
    EXPECT_DOUBLE_EQ(r.p[i], 0.3);
  }
}

TEST(Noise, SharedUniformCopiesOneLevel) {
  RngStream rng(5);
  for (int t = 0; t < 100; ++t) {
    const NoiseParamsRound r = sample_noise_round(NoiseModel::shared_uniform(), 4, rng);
    for (std::size_t i = 1; i < 4; ++i) ASSERT_EQ(r.eps[i], r.eps[0]);
    ASSERT_GE(r.eps[0], 0.0);
    ASSERT_LE(r.eps[0], 1.0);
  }
}

TEST(Noise, MarginalSamplesMatchCdf) {
  const std::vector<MarginalDist> dists{Uniform01{}, TruncExp{2.0}, PowerCdf{0.5}, PowerCdf{3.0}};
  for (const auto& d : dists) {
    RngStream rng(23);
    const int n = 200000;
    int below = 0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_marginal(d, rng);
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
      below += x <= 0.3 ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(below) / n, cdf(d, 0.3), 0.005) << describe(d);
  }
}

TEST(Noise, CdfClosedForms) {
  EXPECT_DOUBLE_EQ(cdf(Uniform01{}, 0.25), 0.25);
  EXPECT_NEAR(cdf(TruncExp{1.0}, 0.5), (1.0 - std::exp(-0.5)) / (1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(cdf(PowerCdf{2.0}, 0.5), 0.25, 1e-15);
  EXPECT_EQ(cdf(Uniform01{}, -1.0), 0.0);
  EXPECT_EQ(cdf(Uniform01{}, 2.0), 1.0);
}

TEST(Noise, SecondMomentWeightFrozenValues) {
  EXPECT_NEAR(second_moment_weight(Uniform01{}, 0.2), 4.0, 1e-12);
  // Arbitrary-precision reference.
  EXPECT_NEAR(second_moment_weight(TruncExp{1.0}, 0.2), 4.306943788500457, 1e-12);
  EXPECT_NEAR(second_moment_weight(PowerCdf{2.0}, 0.1), -2.0 * std::log(0.1), 1e-12);
  EXPECT_NEAR(second_moment_weight(PowerCdf{3.0}, 0.5), 3.0 * (1.0 - 0.5) / 1.0, 1e-12);
  EXPECT_EQ(second_moment_weight(Uniform01{}, 1.0), 0.0);
}

TEST(Noise, SecondMomentWeightRejectsNonpositiveTheta) {
  EXPECT_THROW(second_moment_weight(Uniform01{}, 0.0), DomainError);
  EXPECT_THROW(second_moment_weight(TruncExp{1.0}, -0.1), DomainError);
}

TEST(Noise, ModelValidation) {
  EXPECT_THROW(NoiseModel::constant(1.5), ConfigError);
  EXPECT_THROW(NoiseModel::constant(-0.1), ConfigError);
  EXPECT_THROW(NoiseModel::iid(TruncExp{0.0}), ConfigError);
  EXPECT_THROW(NoiseModel::iid(PowerCdf{-1.0}), ConfigError);
  EXPECT_THROW(NoiseParamsRound::from_eps({0.5, 1.2}), DomainError);
}

TEST(Noise, Describe) {
  EXPECT_EQ(NoiseModel::constant(0.5).describe(), "eps=0.5");
  EXPECT_EQ(NoiseModel::iid(Uniform01{}).describe(), "uniform");
  EXPECT_EQ(NoiseModel::shared_uniform().describe(), "shared-uniform");
  EXPECT_EQ(NoiseModel::iid(TruncExp{2.0}).describe(), "truncexp(lambda=2)");
  EXPECT_EQ(NoiseModel::iid(PowerCdf{0.5}).describe(), "power(alpha=0.5)");
  EXPECT_FALSE(NoiseModel::constant(0.5).marginal().has_value());
  EXPECT_TRUE(NoiseModel::shared_uniform().marginal().has_value());
}
