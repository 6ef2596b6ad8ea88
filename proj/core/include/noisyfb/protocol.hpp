#pragma once

#include <span>
#include <vector>

#include "noisyfb/adversaries.hpp"
#include "noisyfb/learners.hpp"
#include "noisyfb/noise.hpp"
#include "noisyfb/rng.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb {

// sum_t q_t . l_t - min_k sum_t l_{k,t}. Throws ConfigError on dimension mismatch.
double pseudo_regret(const LossMatrix& losses, std::span<const std::vector<double>> q_seq);

struct RoundSettings {
  FeedbackMode mode = FeedbackMode::full_information;
  bool noise_known = true;
  bool adversary_sees_noise = true;
};

// Throws ConfigError if the learner or adversary needs noise it will not be shown, or if the
// estimator's feedback mode does not match.
void check_compatible(const Learner& learner, const Adversary& adversary,
                      const RoundSettings& settings);

// One round of the protocol, in order:
//   1. noise realized (noise stream)
//   2. adversary fixes the losses, possibly reading the realized noise (adversary stream)
//   3. the learner is shown the noise if it is known
//   4. learner emits q_t and samples I_t (learner stream)
//   5. every action's feedback bit is corrupted (noise stream); bandit mode reveals only I_t
//   6. learner builds estimates and updates
// Corruption bits are drawn for all K actions in both modes so that the noise realization is
// the same for every learner under a given seed.
void run_round(std::size_t t, Learner& learner, const Adversary& adversary,
               const NoiseModel& noise, const RoundSettings& settings, EpisodeStreams& streams,
               RoundRecord& out);

RoundRecord run_round(std::size_t t, Learner& learner, const Adversary& adversary,
                      const NoiseModel& noise, const RoundSettings& settings,
                      EpisodeStreams& streams);

}  // namespace noisyfb
