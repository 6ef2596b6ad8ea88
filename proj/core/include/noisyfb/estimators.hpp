#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace noisyfb {

// (c - p) / (1 - 2p) with a constant, known flip probability p < 1/2.
struct UnbiasedConstant {
  double p = 0.0;
};

// The feedback bit itself; needs no knowledge of the noise.
struct Raw {};

// Unbiased inversion on rounds with eps >= theta, zero otherwise. Full information.
struct ThresholdFull {
  double theta = 0.5;
};

// c / q_i on the played action, zero elsewhere.
struct BanditImportance {};

// Importance-weighted thresholded inversion on the played action.
struct Exp3Threshold {
  double theta = 0.5;
};

using EstimatorKind =
    std::variant<UnbiasedConstant, Raw, ThresholdFull, BanditImportance, Exp3Threshold>;

double est_unbiased_constant(std::uint8_t c, double p);
double est_raw(std::uint8_t c);
double est_threshold_full(std::uint8_t c, double eps, double theta);
double est_bandit_importance(std::uint8_t c, double q_i, bool played);
double est_exp3_threshold(std::uint8_t c, double eps, double theta, double q_i, bool played);

struct EstimateInput {
  std::optional<std::uint8_t> feedback;  // absent for unplayed actions under bandit feedback
  double eps = 1.0;                      // realized eps of this action (ignored if unused)
  double q = 1.0;                        // probability the learner gave this action
  bool played = false;
};

double estimate(const EstimatorKind& kind, const EstimateInput& in);

// Throws ConfigError on p >= 1/2, theta outside (0, 1).
void validate(const EstimatorKind& kind);

// Threshold estimators read the realized eps, so they need known noise.
bool needs_realized_noise(const EstimatorKind& kind);
bool uses_bandit_feedback(const EstimatorKind& kind);
std::string describe(const EstimatorKind& kind);

}  // namespace noisyfb
