#include <gtest/gtest.h>

#include <cmath>

#include "noisyfb/config.hpp"
#include "noisyfb/error.hpp"

using namespace noisyfb;

TEST(Config, MinimalFullConstantGetsDefaults) {
  const ExperimentConfig c =
      parse_config_text("setting = \"full-const\"\nK = 10\nT = 10000\neps = 0.5\nseeds = 50\n");
  EXPECT_EQ(c.actions, 10U);
  EXPECT_EQ(c.horizon, 10'000U);
  EXPECT_EQ(c.seeds.size(), 50U);
  EXPECT_EQ(c.seeds.back(), 49U);
  ASSERT_TRUE(c.eta.has_value());
  EXPECT_NEAR(*c.eta, 0.007587135646925731, 1e-15);
  EXPECT_EQ(c.eta_source, "eps*sqrt(lnK/T)");
  EXPECT_FALSE(c.theta.has_value());
  EXPECT_EQ(learner_label(c), "ews-unbiased");
  EXPECT_EQ(adversary_label(c), "stochastic-gap");
  EXPECT_NEAR(std::get<StochasticGap>(c.adversary).delta, 0.005058090431283821, 1e-16);
}

TEST(Config, OverrideBeatsFile) {
  const std::string text = "setting = full-const\nK = 10\nT = 1e4\neps = 0.5\neta = 0.2\n";
  EXPECT_EQ(*parse_config_text(text).eta, 0.2);
  const ExperimentConfig c = parse_config_text(text, parse_overrides({"eta=0.01"}));
  EXPECT_EQ(*c.eta, 0.01);
  EXPECT_EQ(std::get<Ews>(c.learner).eta, 0.01);
  EXPECT_EQ(c.eta_source, "config");
}

TEST(Config, VariableSettingDefaults) {
  const ExperimentConfig c = parse_config_text("setting = full-var\nK = 10\nT = 1000000\n");
  EXPECT_NEAR(*c.eta, 1.743721513596412e-4, 1e-16);
  EXPECT_NEAR(*c.theta, 0.013205004784536852, 1e-15);
  EXPECT_EQ(learner_label(c), "ew-threshold");
  EXPECT_EQ(noise_label(c), "shared-uniform");
  const ExperimentConfig b = parse_config_text("setting = bandit-var\nK = 2\nT = 1000000\n");
  EXPECT_NEAR(*b.eta, 6.216419424375857e-5, 1e-17);
  EXPECT_EQ(learner_label(b), "exp3-threshold");
}

TEST(Config, GeneralMarginalUsesGeneralRate) {
  const ExperimentConfig c = parse_config_text(
      "setting = full-var\nK = 10\nT = 100000\nnoise = truncexp\nlambda = 1.0\n"
      "adversary = stochastic-gap\ndelta = 0.1\n");
  const double theta = *c.theta;
  const double g = second_moment_weight(TruncExp{1.0}, theta);
  EXPECT_NEAR(*c.eta, std::sqrt(std::log(10.0) / (1e5 * g)), 1e-15);
}

TEST(Config, ThetaAtOrAboveOneRejected) {
  EXPECT_THROW(parse_config_text("setting = full-var\nK = 10\nT = 1000\ntheta = 1.0\n"),
               ConfigError);
  // (ln K / T)^(1/3) >= 1 when T <= ln K.
  EXPECT_THROW(parse_config_text("setting = full-var\nK = 1000\nT = 5\n"), ConfigError);
}

TEST(Config, ThresholdWithUnknownNoiseRejected) {
  try {
    (void)parse_config_text(
        "setting = full-var\nnoise_known = false\nK = 2\nT = 100\nlearner = ew-threshold\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("learner"), std::string::npos);
  }
  EXPECT_THROW(parse_config_text("setting = full-var\nnoise_known = false\nK = 2\nT = 100\n"),
               ConfigError);
}

TEST(Config, ErrorsNameTheKey) {
  const auto message = [](const std::string& text) {
    try {
      (void)parse_config_text(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("setting = full-const\nK = 2\nT = 10\n").find("eps"), std::string::npos);
  EXPECT_NE(message("setting = full-const\nK = 2\nT = 10\neps = 2\n").find("eps"),
            std::string::npos);
  EXPECT_NE(message("setting = full-const\nK = 2\nT = 10\neps = 0.5\nbogus = 1\n").find("bogus"),
            std::string::npos);
  EXPECT_NE(message("setting = diagonal\nK = 2\nT = 10\n").find("setting"), std::string::npos);
  EXPECT_NE(message("setting = full-const\nK = two\nT = 10\neps = 0.5\n").find("K"),
            std::string::npos);
  EXPECT_NE(message("setting = full-const\nT = 10\neps = 0.5\n").find("K"), std::string::npos);
  EXPECT_NE(message("setting = full-const\nK = 2\nK = 3\nT = 10\neps = 0.5\n").find("duplicate"),
            std::string::npos);
  EXPECT_THROW(parse_config_text("setting = full-const\nK=2\nT=10\neps=0.5\n",
                                 parse_overrides({"nokey=1"})),
               ConfigError);
  EXPECT_THROW(parse_overrides({"eta"}), ConfigError);
}

TEST(Config, SeedsAndComments) {
  const ExperimentConfig c = parse_config_text(
      "# comment\nsetting = 'bandit-const'  # trailing\nK = 3\nT = 100\neps = 0.5\n"
      "seeds = [4, 8, 15]\nroot_seed = 9\nlearner = uniform\n");
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 8, 15}));
  EXPECT_EQ(c.root_seed, 9U);
  EXPECT_FALSE(c.eta.has_value());
  EXPECT_THROW(parse_config_text("setting = bandit-const\nK=3\nT=100\neps=0.5\nlearner = uniform\n"
                                 "eta = 0.1\n"),
               ConfigError);
}

TEST(Config, FixedAndReducedAdversaries) {
  const ExperimentConfig f = parse_config_text(
      "setting = full-const\nK = 2\nT = 10\neps = 0.5\nadversary = fixed\n"
      "loss_pattern = \"01; 10\"\n");
  const auto& losses = std::get<FixedSequence>(f.adversary).losses;
  EXPECT_EQ(losses.horizon(), 2U);
  EXPECT_EQ(losses.at(1, 0), 1);
  EXPECT_THROW(parse_config_text("setting = full-const\nK = 3\nT = 10\neps = 0.5\n"
                                 "adversary = fixed\nloss_pattern = 01\n"),
               ConfigError);
  const ExperimentConfig r = parse_config_text(
      "setting = bandit-var\nK = 10\nT = 100000\nbeta = reduced\ngamma = 0.09\n");
  EXPECT_NEAR(std::get<BanditVariableNoise>(r.adversary).beta, 0.3, 1e-12);
}

TEST(Config, PilotMeanIsReproduced) {
  // Pilot value for the full-information constant-noise acceptance run.
  const ExperimentConfig c = parse_config_text(
      "setting = full-const\nK = 10\nT = 10000\neps = 0.5\nseeds = 50\nroot_seed = 2024\n");
  const RegretSummary s = replicate(c);
  EXPECT_NEAR(s.mean_regret, 86.41136305047208, 1e-9 * 86.41136305047208);
}
