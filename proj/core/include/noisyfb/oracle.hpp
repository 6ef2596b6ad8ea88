#pragma once

// Independent ground truth: exact enumeration, quadrature and brute-force replays used to
// certify the simulation. Nothing here calls the episode runner.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "noisyfb/estimators.hpp"
#include "noisyfb/learners.hpp"
#include "noisyfb/noise.hpp"
#include "noisyfb/rng.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb::oracle {

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
};

using EstimatorFn = std::function<double(const EstimateInput&)>;

// Exact E[est] and E[est^2] for true loss `loss` under eps-noisy feedback: c = loss with
// weight (1 + eps)/2 and 1 - loss with weight (1 - eps)/2. When q_i is given, the play event
// is enumerated too (played with weight q_i, absent feedback otherwise).
Moments enumerate_estimator_moments(const EstimatorKind& kind, std::uint8_t loss, double eps,
                                    std::optional<double> q_i = std::nullopt);
Moments enumerate_estimator_moments(const EstimatorFn& fn, std::uint8_t loss, double eps,
                                    std::optional<double> q_i = std::nullopt);

// Replays exponential weights on a T x K table of estimates and returns
//   ln K / eta + eta * sum_t sum_i q_it est_it^2 - (sum_t q_t . est_t - min_k sum_t est_kt),
// which is nonnegative for every input satisfying -eta * est <= 1.
// Throws HypothesisError when that precondition fails.
double check_ews_inequality(const std::vector<std::vector<double>>& estimates, double eta);

// Adaptive Gauss-Kronrod quadrature of int_theta^1 eps^-2 dF(eps), absolute tolerance 1e-8.
// Throws DomainError for theta <= 0.
double quadrature_g(const MarginalDist& dist, double theta);

// Full information, constant noise, deterministic losses.
struct TinyInstance {
  LossMatrix losses;
  double eps = 1.0;
};

inline constexpr std::size_t kMaxExactHorizon = 6;
inline constexpr std::size_t kMaxExactActions = 2;

// Exact expected pseudo-regret by summing over every feedback history with its noise
// probability. The learner's q_t is a deterministic function of the history, so no action
// sampling is enumerated. Throws SizeError beyond T = 6, K = 2.
double exact_expected_pseudo_regret(const TinyInstance& instance, const LearnerKind& learner);

// np - sqrt(p n ln K / 9).
double binomial_min_threshold(std::size_t n, double p, std::size_t actions);

// Fraction of reps in which the minimum of K - 1 i.i.d. Binomial(n, p) draws falls at or
// below binomial_min_threshold(n, p, K).
double binomial_min_check(std::size_t n, double p, std::size_t actions, std::size_t reps,
                          RngStream& rng);

}  // namespace noisyfb::oracle
