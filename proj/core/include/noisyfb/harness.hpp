#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noisyfb/adversaries.hpp"
#include "noisyfb/learners.hpp"
#include "noisyfb/noise.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb {

struct ExperimentConfig {
  Setting setting;
  std::size_t actions = 2;
  std::size_t horizon = 1;
  NoiseModel noise = NoiseModel::constant(1.0);
  LearnerKind learner = UniformRandom{};
  AdversaryKind adversary = StochasticGap{};
  std::vector<std::uint64_t> seeds{0};
  std::uint64_t root_seed = 0;
  double gamma = 1.0;
  bool adversary_sees_noise = true;
  HypothesisPolicy hypothesis_policy = HypothesisPolicy::count;

  // Reporting only; the learner and adversary carry the values actually used.
  std::optional<double> eta;
  std::optional<double> theta;
  std::string eta_source;
  std::string theta_source;
  std::string learner_label;
  std::string adversary_label;
};

// Throws ConfigError on incompatible combinations, e.g. a threshold estimator with unknown
// noise (sublinear regret is impossible there) or a full-information estimator under bandit
// feedback.
void validate(const ExperimentConfig& config);

std::string learner_label(const ExperimentConfig& config);
std::string adversary_label(const ExperimentConfig& config);
// "eps=0.5" for constant noise, else the marginal description.
std::string noise_label(const ExperimentConfig& config);

using RoundObserver = std::function<void(const RoundRecord&)>;

// Runs T rounds under the protocol ordering. Deterministic in (config, seed).
RegretTrace run_episode(const ExperimentConfig& config, std::uint64_t seed,
                        const RoundObserver& observer = {});

struct RegretSummary {
  double mean_regret = 0.0;
  double std_error = 0.0;
  std::optional<double> min_over_learners;
  std::optional<double> theoretical_bound;
  std::string bound_source;
  bool bound_hypothesis_met = true;
  std::vector<double> per_seed;
  std::optional<double> mean_planted_regret;
  std::size_t hypothesis_violations = 0;
};

// Runs every seed (in parallel when threads > 1; 0 means hardware concurrency) and aggregates
// in seed order, so scheduling never changes the result.
RegretSummary replicate(const ExperimentConfig& config, unsigned threads = 0);

struct NamedLearner {
  std::string label;
  LearnerKind kind;
};

struct LearnerComparison {
  std::vector<std::pair<std::string, RegretSummary>> per_learner;
  double min_mean_regret = 0.0;
  std::string argmin;
};

// The same adversary, noise and seeds against each learner.
LearnerComparison compare_learners(const ExperimentConfig& base,
                                   const std::vector<NamedLearner>& learners,
                                   unsigned threads = 0);

enum class BoundFormula {
  full_constant,            // (2/eps) sqrt(T ln K)
  full_variable_uniform,    // 3 T^(2/3) (ln K)^(1/3)
  full_variable_truncexp,   // 3 lambda T^(2/3) (ln K)^(1/3)
  bandit_constant,          // (2/eps) sqrt(T K ln K)
  bandit_variable_uniform,  // 3 T^(2/3) K^(1/3) (ln K)^(1/3)
};

struct Bound {
  double value = 0.0;
  bool hypothesis_met = true;
  std::string source;
};

Bound theoretical_bound(BoundFormula formula, double eps, std::size_t horizon,
                        std::size_t actions, double lambda = 1.0);

// ln K / eta + eta T g(theta) + F(theta) T for the threshold learner with any marginal.
double threshold_general_bound(double eta, double theta, std::size_t horizon,
                               std::size_t actions, const MarginalDist& dist);

// T-exponent (2 + alpha) / (2 + 2 alpha) of the bound under F(theta) <= theta^alpha.
double power_cdf_regret_exponent(double alpha);

// Bound applicable to the config's setting and noise, if the setting has one.
std::optional<Bound> bound_for(const ExperimentConfig& config);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t excluded = 0;  // nonpositive regret values dropped before fitting
};

// OLS of ln(regret) on ln(T). Needs at least 4 usable points (ConfigError otherwise).
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points);

}  // namespace noisyfb
