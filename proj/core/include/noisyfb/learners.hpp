#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "noisyfb/estimators.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb {

// State of the exponential weights scheme, kept in log domain: w_i = exp(log_weights[i]).
class EwsState {
 public:
  EwsState(std::size_t actions, double eta);

  std::size_t actions() const { return log_weights_.size(); }
  double eta() const { return eta_; }
  std::size_t round() const { return round_; }
  std::span<const double> log_weights() const { return log_weights_; }

  // log_weights[i] -= eta * estimates[i]; the caller is responsible for the hypothesis check.
  void apply(std::span<const double> estimates);

  bool operator==(const EwsState&) const = default;

 private:
  std::vector<double> log_weights_;
  double eta_;
  std::size_t round_ = 0;
};

// q_i = exp(logW_i - logsumexp(logW)).
std::vector<double> select_distribution(const EwsState& state);
void select_distribution(const EwsState& state, std::span<double> out);

// Returns the updated state. Throws HypothesisError naming the offending action and value if
// -eta * estimate > 1 for any action.
EwsState update(const EwsState& state, std::span<const double> estimates);

// Largest value of -eta * estimate_i; the update hypothesis requires this to be <= 1.
double hypothesis_load(double eta, std::span<const double> estimates);

struct Ews {
  EstimatorKind estimator;
  double eta = 0.1;
};

// Plays the argmin of cumulative observed feedback (absent feedback counts as 0), lowest
// index on ties.
struct FollowNoisyLeader {};

struct UniformRandom {};

using LearnerKind = std::variant<Ews, FollowNoisyLeader, UniformRandom>;

std::string describe(const LearnerKind& kind);
bool needs_realized_noise(const LearnerKind& kind);

enum class HypothesisPolicy {
  enforce,  // throw HypothesisError
  count,    // apply the update anyway and count the round
};

class Learner {
 public:
  Learner(LearnerKind kind, std::size_t actions,
          HypothesisPolicy policy = HypothesisPolicy::enforce);

  const LearnerKind& kind() const { return kind_; }
  std::size_t actions() const { return actions_; }
  bool needs_realized_noise() const { return noisyfb::needs_realized_noise(kind_); }

  // Distribution for the current round.
  std::span<const double> distribution() const { return q_; }

  // Builds the loss estimates for the round that was just played, writes them to estimates,
  // and advances the learner. noise is nullptr when the learner does not observe noise.
  void observe(const FeedbackVector& feedback, const NoiseParamsRound* noise,
               ActionIndex played, std::span<double> estimates);

  std::size_t hypothesis_violations() const { return violations_; }
  const EwsState* ews_state() const;

 private:
  void refresh_distribution();

  LearnerKind kind_;
  std::size_t actions_;
  HypothesisPolicy policy_;
  std::vector<double> q_;
  std::vector<EwsState> ews_;       // one element for Ews learners
  std::vector<double> cumulative_;  // observed feedback sums, FollowNoisyLeader
  std::size_t violations_ = 0;
};

enum class FeedbackModel { full_constant, full_variable, bandit_constant, bandit_variable };

struct Setting {
  FeedbackModel model = FeedbackModel::full_constant;
  bool noise_known = true;

  FeedbackMode mode() const {
    return (model == FeedbackModel::bandit_constant || model == FeedbackModel::bandit_variable)
               ? FeedbackMode::bandit
               : FeedbackMode::full_information;
  }
  bool constant_noise() const {
    return model == FeedbackModel::full_constant || model == FeedbackModel::bandit_constant;
  }
  bool operator==(const Setting&) const = default;
};

std::string describe(const Setting& s);

// Tuned learning rate for the setting's algorithm:
//   full/constant:       eps * sqrt(ln K / T)
//   full/variable:       (ln K / T)^(2/3)
//   bandit/constant:     eps * sqrt(ln K / (T K))
//   bandit/variable:     (ln K)^(2/3) / (K^(1/3) T^(2/3))
// Throws ConfigError for settings without a tuned rate (variable noise, unknown) or T, K < 2.
double default_eta(const Setting& setting, double eps, std::size_t horizon, std::size_t actions);

// Threshold for the variable-noise algorithms:
//   full/variable:   (ln K / T)^(1/3)
//   bandit/variable: (K ln K / T)^(1/3)
double default_theta(const Setting& setting, std::size_t horizon, std::size_t actions);

// sqrt(ln K / (T g)) for a general marginal with second-moment weight g = g(theta).
double general_eta(double g, std::size_t horizon, std::size_t actions);

}  // namespace noisyfb
