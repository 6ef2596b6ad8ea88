#include "noisyfb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "noisyfb/protocol.hpp"
#include "noisyfb/rng.hpp"
#include "overloaded.hpp"

namespace noisyfb {

using detail::overloaded;

void validate(const ExperimentConfig& config) {
  if (config.actions < 2) throw ConfigError("K must be at least 2");
  if (config.horizon < 1) throw ConfigError("T must be at least 1");
  if (config.seeds.empty()) throw ConfigError("seeds: at least one seed required");

  const Setting& s = config.setting;
  if (s.constant_noise() != config.noise.is_constant()) {
    throw ConfigError("noise: setting " + describe(s) + " requires " +
                      (s.constant_noise() ? "constant" : "variable") + " noise, got " +
                      config.noise.describe());
  }
  if (const auto* ews = std::get_if<Ews>(&config.learner)) {
    validate(ews->estimator);
    if (!(ews->eta > 0.0)) throw ConfigError("eta must be positive");
    if (uses_bandit_feedback(ews->estimator) != (s.mode() == FeedbackMode::bandit)) {
      throw ConfigError("learner: " + describe(config.learner) + " does not match the " +
                        describe(s) + " feedback mode");
    }
    if (needs_realized_noise(ews->estimator) && !s.noise_known) {
      throw ConfigError("learner: " + describe(config.learner) +
                        " needs the realized noise; with unknown variable noise no learner "
                        "achieves sublinear regret");
    }
    if (std::holds_alternative<UnbiasedConstant>(ews->estimator) && !s.constant_noise()) {
      throw ConfigError("learner: ews-unbiased needs constant noise");
    }
    if (std::holds_alternative<UnbiasedConstant>(ews->estimator) && !s.noise_known) {
      throw ConfigError("learner: ews-unbiased needs the noise level; use ews-raw");
    }
  }
  validate(config.adversary, config.actions);
  if (requires_noise(config.adversary) && !config.adversary_sees_noise) {
    throw ConfigError("adversary: " + describe(config.adversary) +
                      " must observe the realized noise");
  }
}

std::string learner_label(const ExperimentConfig& config) {
  return config.learner_label.empty() ? describe(config.learner) : config.learner_label;
}

std::string adversary_label(const ExperimentConfig& config) {
  return config.adversary_label.empty() ? describe(config.adversary) : config.adversary_label;
}

std::string noise_label(const ExperimentConfig& config) { return config.noise.describe(); }

namespace {

RegretTrace run_episode_impl(const ExperimentConfig& config, std::uint64_t seed,
                             const RoundObserver& observer, bool keep_trace) {
  validate(config);
  const std::size_t K = config.actions;
  EpisodeStreams streams = EpisodeStreams::derive(config.root_seed, seed);
  const Adversary adversary(config.adversary, K, streams.adversary);
  Learner learner(config.learner, K, config.hypothesis_policy);
  const RoundSettings settings{config.setting.mode(), config.setting.noise_known,
                               config.adversary_sees_noise};
  check_compatible(learner, adversary, settings);

  RegretTrace trace;
  if (keep_trace) trace.per_round.reserve(config.horizon);
  std::vector<double> cumulative(K, 0.0);
  double online = 0.0;
  double sampled = 0.0;
  double regret = 0.0;
  RoundRecord record;
  for (std::size_t t = 0; t < config.horizon; ++t) {
    run_round(t, learner, adversary, config.noise, settings, streams, record);
    if (observer) observer(record);
    for (std::size_t i = 0; i < K; ++i) {
      online += record.q[i] * record.true_loss[i];
      cumulative[i] += record.true_loss[i];
    }
    sampled += record.incurred_loss;
    regret = online - *std::min_element(cumulative.begin(), cumulative.end());
    if (keep_trace) trace.per_round.push_back(regret);
  }
  if (!keep_trace) trace.per_round.push_back(regret);

  const auto best = std::min_element(cumulative.begin(), cumulative.end());
  trace.best_action = ActionIndex{static_cast<std::size_t>(best - cumulative.begin())};
  trace.realized_regret = sampled - *best;
  if (adversary.has_planted()) {
    trace.planted = adversary.planted_best();
    trace.planted_regret = online - cumulative[trace.planted->value];
  }
  trace.hypothesis_violations = learner.hypothesis_violations();
  return trace;
}

// Runs body(i) for i in [0, n) on up to `threads` workers; rethrows the first exception.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

RegretTrace run_episode(const ExperimentConfig& config, std::uint64_t seed,
                        const RoundObserver& observer) {
  return run_episode_impl(config, seed, observer, true);
}

RegretSummary replicate(const ExperimentConfig& config, unsigned threads) {
  validate(config);
  const std::size_t n = config.seeds.size();
  std::vector<RegretTrace> traces(n);
  parallel_for(n, threads, [&](std::size_t i) {
    traces[i] = run_episode_impl(config, config.seeds[i], {}, false);
  });

  RegretSummary summary;
  summary.per_seed.reserve(n);
  double planted_total = 0.0;
  bool all_planted = true;
  for (const auto& trace : traces) {
    summary.per_seed.push_back(trace.final_regret());
    summary.hypothesis_violations += trace.hypothesis_violations;
    if (trace.planted_regret) {
      planted_total += *trace.planted_regret;
    } else {
      all_planted = false;
    }
  }
  const double count = static_cast<double>(n);
  summary.mean_regret =
      std::accumulate(summary.per_seed.begin(), summary.per_seed.end(), 0.0) / count;
  if (n > 1) {
    double ss = 0.0;
    for (double r : summary.per_seed) ss += (r - summary.mean_regret) * (r - summary.mean_regret);
    summary.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  if (all_planted) summary.mean_planted_regret = planted_total / count;
  if (const auto bound = bound_for(config)) {
    summary.theoretical_bound = bound->value;
    summary.bound_source = bound->source;
    summary.bound_hypothesis_met = bound->hypothesis_met;
  }
  return summary;
}

LearnerComparison compare_learners(const ExperimentConfig& base,
                                   const std::vector<NamedLearner>& learners, unsigned threads) {
  if (learners.empty()) throw ConfigError("compare_learners: no learners given");
  LearnerComparison out;
  for (const auto& entry : learners) {
    ExperimentConfig config = base;
    config.learner = entry.kind;
    config.learner_label = entry.label;
    out.per_learner.emplace_back(entry.label, replicate(config, threads));
  }
  const auto best = std::min_element(out.per_learner.begin(), out.per_learner.end(),
                                     [](const auto& a, const auto& b) {
                                       return a.second.mean_regret < b.second.mean_regret;
                                     });
  out.min_mean_regret = best->second.mean_regret;
  out.argmin = best->first;
  for (auto& [label, summary] : out.per_learner) summary.min_over_learners = out.min_mean_regret;
  return out;
}

Bound theoretical_bound(BoundFormula formula, double eps, std::size_t horizon,
                        std::size_t actions, double lambda) {
  const double T = static_cast<double>(horizon);
  const double K = static_cast<double>(actions);
  const double lnK = std::log(K);
  Bound b;
  b.hypothesis_met = actions >= 2 && horizon >= 1;
  switch (formula) {
    case BoundFormula::full_constant:
      b.value = 2.0 / eps * std::sqrt(T * lnK);
      b.hypothesis_met = b.hypothesis_met && eps > 0.0 && eps <= 1.0 && T >= lnK / 4.0;
      b.source = "(2/eps)*sqrt(T*lnK)";
      break;
    case BoundFormula::full_variable_uniform:
      b.value = 3.0 * std::pow(T, 2.0 / 3.0) * std::cbrt(lnK);
      b.source = "3*T^(2/3)*lnK^(1/3)";
      break;
    case BoundFormula::full_variable_truncexp:
      b.value = 3.0 * lambda * std::pow(T, 2.0 / 3.0) * std::cbrt(lnK);
      b.hypothesis_met = b.hypothesis_met && lambda > 0.0;
      b.source = "3*lambda*T^(2/3)*lnK^(1/3)";
      break;
    case BoundFormula::bandit_constant:
      b.value = 2.0 / eps * std::sqrt(T * K * lnK);
      b.hypothesis_met = b.hypothesis_met && eps > 0.0 && eps <= 1.0;
      b.source = "(2/eps)*sqrt(T*K*lnK)";
      break;
    case BoundFormula::bandit_variable_uniform:
      b.value = 3.0 * std::pow(T, 2.0 / 3.0) * std::cbrt(K) * std::cbrt(lnK);
      b.source = "3*T^(2/3)*K^(1/3)*lnK^(1/3)";
      break;
  }
  return b;
}

double threshold_general_bound(double eta, double theta, std::size_t horizon,
                               std::size_t actions, const MarginalDist& dist) {
  const double T = static_cast<double>(horizon);
  return std::log(static_cast<double>(actions)) / eta +
         eta * T * second_moment_weight(dist, theta) + cdf(dist, theta) * T;
}

double power_cdf_regret_exponent(double alpha) { return (2.0 + alpha) / (2.0 + 2.0 * alpha); }

std::optional<Bound> bound_for(const ExperimentConfig& config) {
  const Setting& s = config.setting;
  const std::size_t T = config.horizon;
  const std::size_t K = config.actions;
  const auto constant_eps = [&]() -> double {
    return std::get<ConstantNoise>(config.noise.variant()).eps;
  };
  switch (s.model) {
    case FeedbackModel::full_constant:
      return theoretical_bound(BoundFormula::full_constant, constant_eps(), T, K);
    case FeedbackModel::bandit_constant:
      return theoretical_bound(BoundFormula::bandit_constant, constant_eps(), T, K);
    case FeedbackModel::full_variable:
    case FeedbackModel::bandit_variable:
      break;
  }
  if (!s.noise_known) return std::nullopt;
  const auto marginal = config.noise.marginal();
  if (!marginal) return std::nullopt;
  const bool bandit = s.model == FeedbackModel::bandit_variable;
  return std::visit(
      overloaded{
          [&](const Uniform01&) -> std::optional<Bound> {
            return theoretical_bound(bandit ? BoundFormula::bandit_variable_uniform
                                            : BoundFormula::full_variable_uniform,
                                     0.0, T, K);
          },
          [&](const TruncExp& d) -> std::optional<Bound> {
            if (bandit) return std::nullopt;
            return theoretical_bound(BoundFormula::full_variable_truncexp, 0.0, T, K, d.lambda);
          },
          [&](const PowerCdf&) -> std::optional<Bound> {
            const auto* ews = std::get_if<Ews>(&config.learner);
            const auto* thr = ews ? std::get_if<ThresholdFull>(&ews->estimator) : nullptr;
            if (bandit || thr == nullptr) return std::nullopt;
            return Bound{threshold_general_bound(ews->eta, thr->theta, T, K, *marginal), true,
                         "lnK/eta+eta*T*g(theta)+F(theta)*T"};
          },
      },
      *marginal);
}

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> logs;
  ScalingFit fit;
  for (const auto& [T, regret] : points) {
    if (regret > 0.0 && T > 0.0) {
      logs.emplace_back(std::log(T), std::log(regret));
    } else {
      ++fit.excluded;
    }
  }
  if (logs.size() < 4) {
    throw ConfigError("fit_scaling_exponent: need at least 4 points with positive regret, got " +
                      std::to_string(logs.size()));
  }
  const double n = static_cast<double>(logs.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_scaling_exponent: all T values are equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : logs) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace noisyfb
