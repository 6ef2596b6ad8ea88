#include "noisyfb/protocol.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "noisyfb/error.hpp"

namespace noisyfb {

double pseudo_regret(const LossMatrix& losses, std::span<const std::vector<double>> q_seq) {
  if (q_seq.size() != losses.horizon()) {
    throw ConfigError("pseudo_regret: " + std::to_string(q_seq.size()) +
                      " distributions for horizon " + std::to_string(losses.horizon()));
  }
  const std::size_t K = losses.actions();
  double online = 0.0;
  std::vector<double> per_action(K, 0.0);
  for (std::size_t t = 0; t < losses.horizon(); ++t) {
    if (q_seq[t].size() != K) {
      throw ConfigError("pseudo_regret: distribution " + std::to_string(t) + " has " +
                        std::to_string(q_seq[t].size()) + " entries, expected " +
                        std::to_string(K));
    }
    for (std::size_t i = 0; i < K; ++i) {
      online += q_seq[t][i] * losses.at(t, i);
      per_action[i] += losses.at(t, i);
    }
  }
  return online - *std::min_element(per_action.begin(), per_action.end());
}

void check_compatible(const Learner& learner, const Adversary& adversary,
                      const RoundSettings& settings) {
  if (learner.actions() != adversary.actions()) {
    throw ConfigError("learner and adversary disagree on K");
  }
  if (adversary.requires_noise() && !settings.adversary_sees_noise) {
    throw ConfigError(describe(adversary.kind()) +
                      " assigns losses after observing the noise, which this setting hides");
  }
  if (learner.needs_realized_noise() && !settings.noise_known) {
    throw ConfigError(describe(learner.kind()) +
                      " needs the realized noise; it cannot run with unknown noise");
  }
  if (const auto* ews = std::get_if<Ews>(&learner.kind())) {
    const bool bandit_estimator = uses_bandit_feedback(ews->estimator);
    if (bandit_estimator != (settings.mode == FeedbackMode::bandit)) {
      throw ConfigError(describe(learner.kind()) + " is a " +
                        (bandit_estimator ? "bandit" : "full-information") +
                        " learner but the setting uses " +
                        (settings.mode == FeedbackMode::bandit ? "bandit" : "full-information") +
                        " feedback");
    }
  }
}

void run_round(std::size_t t, Learner& learner, const Adversary& adversary,
               const NoiseModel& noise, const RoundSettings& settings, EpisodeStreams& streams,
               RoundRecord& out) {
  check_compatible(learner, adversary, settings);
  const std::size_t K = learner.actions();
  out.t = t;

  sample_noise_round(noise, K, streams.noise, out.noise);

  out.true_loss.resize(K);
  adversary.assign_losses(t, settings.adversary_sees_noise ? &out.noise : nullptr,
                          streams.adversary, out.true_loss);

  const auto q = learner.distribution();
  out.q.assign(q.begin(), q.end());
  out.played = ActionIndex{streams.learner.categorical(out.q)};
  out.incurred_loss = out.true_loss[out.played.value];

  out.feedback.mode = settings.mode;
  out.feedback.values.resize(K);
  for (std::size_t i = 0; i < K; ++i) {
    const std::uint8_t c = corrupt(out.true_loss[i], out.noise.eps[i], streams.noise);
    if (settings.mode == FeedbackMode::full_information || i == out.played.value) {
      out.feedback.values[i] = c;
    } else {
      out.feedback.values[i].reset();
    }
  }

  out.estimates.resize(K);
  learner.observe(out.feedback, settings.noise_known ? &out.noise : nullptr, out.played,
                  out.estimates);
}

RoundRecord run_round(std::size_t t, Learner& learner, const Adversary& adversary,
                      const NoiseModel& noise, const RoundSettings& settings,
                      EpisodeStreams& streams) {
  RoundRecord out;
  run_round(t, learner, adversary, noise, settings, streams, out);
  return out;
}

}  // namespace noisyfb
