#include "noisyfb/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "overloaded.hpp"

namespace noisyfb::oracle {

using detail::overloaded;

namespace {

Moments enumerate(const EstimatorFn& fn, std::uint8_t loss, double eps,
                  std::optional<double> q_i) {
  const double flip = (1.0 - eps) / 2.0;
  const std::uint8_t kept = loss;
  const std::uint8_t flipped = static_cast<std::uint8_t>(1 - loss);
  Moments m;
  const auto add = [&m](double weight, double value) {
    m.mean += weight * value;
    m.second_moment += weight * value * value;
  };
  if (!q_i) {
    add(1.0 - flip, fn(EstimateInput{kept, eps, 1.0, true}));
    add(flip, fn(EstimateInput{flipped, eps, 1.0, true}));
    return m;
  }
  const double q = *q_i;
  add(q * (1.0 - flip), fn(EstimateInput{kept, eps, q, true}));
  add(q * flip, fn(EstimateInput{flipped, eps, q, true}));
  add(1.0 - q, fn(EstimateInput{std::nullopt, eps, q, false}));
  return m;
}

}  // namespace

Moments enumerate_estimator_moments(const EstimatorFn& fn, std::uint8_t loss, double eps,
                                    std::optional<double> q_i) {
  return enumerate(fn, loss, eps, q_i);
}

Moments enumerate_estimator_moments(const EstimatorKind& kind, std::uint8_t loss, double eps,
                                    std::optional<double> q_i) {
  if (uses_bandit_feedback(kind) && !q_i) {
    throw std::invalid_argument("bandit estimators need the play probability q_i");
  }
  const EstimatorFn fn = [&kind](const EstimateInput& in) { return estimate(kind, in); };
  return enumerate(fn, loss, eps, uses_bandit_feedback(kind) ? q_i : std::nullopt);
}

double check_ews_inequality(const std::vector<std::vector<double>>& estimates, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (estimates.empty()) return 0.0;
  const std::size_t K = estimates.front().size();
  for (std::size_t t = 0; t < estimates.size(); ++t) {
    if (estimates[t].size() != K) throw std::invalid_argument("ragged estimate table");
    for (std::size_t i = 0; i < K; ++i) {
      if (-eta * estimates[t][i] > 1.0) {
        throw HypothesisError("hypothesis -eta*estimate <= 1 fails at round " +
                              std::to_string(t) + ", action " + std::to_string(i));
      }
    }
  }

  // Plain replay: w_{i,t+1} = w_{i,t} exp(-eta est_{i,t}), kept as logs and normalized by
  // the running maximum.
  std::vector<double> log_w(K, 0.0);
  std::vector<double> cumulative(K, 0.0);
  std::vector<double> q(K);
  double online = 0.0;
  double second = 0.0;
  for (const auto& row : estimates) {
    const double top = *std::max_element(log_w.begin(), log_w.end());
    double total = 0.0;
    for (std::size_t i = 0; i < K; ++i) total += std::exp(log_w[i] - top);
    for (std::size_t i = 0; i < K; ++i) q[i] = std::exp(log_w[i] - top) / total;
    for (std::size_t i = 0; i < K; ++i) {
      online += q[i] * row[i];
      second += q[i] * row[i] * row[i];
      cumulative[i] += row[i];
      log_w[i] -= eta * row[i];
    }
  }
  const double best = *std::min_element(cumulative.begin(), cumulative.end());
  const double lhs = online - best;
  const double rhs = std::log(static_cast<double>(K)) / eta + eta * second;
  return rhs - lhs;
}

double quadrature_g(const MarginalDist& dist, double theta) {
  if (!(theta > 0.0)) {
    throw DomainError("quadrature_g: integral diverges for theta <= 0 (got " +
                      format_double(theta) + ")");
  }
  if (theta >= 1.0) return 0.0;
  const auto density = [&dist](double x) {
    return std::visit(overloaded{
                          [](const Uniform01&) { return 1.0; },
                          [x](const TruncExp& d) {
                            return d.lambda * std::exp(-d.lambda * x) /
                                   (1.0 - std::exp(-d.lambda));
                          },
                          [x](const PowerCdf& d) { return d.alpha * std::pow(x, d.alpha - 1.0); },
                      },
                      dist);
  };
  const auto integrand = [&density](double x) { return density(x) / (x * x); };
  double error = 0.0;
  // Relative tolerance 1e-13 keeps the absolute error well under 1e-8 for theta >= 1e-3.
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, theta, 1.0, 30, 1e-13, &error);
  (void)error;
  return value;
}

double exact_expected_pseudo_regret(const TinyInstance& instance, const LearnerKind& learner) {
  const std::size_t T = instance.losses.horizon();
  const std::size_t K = instance.losses.actions();
  if (T > kMaxExactHorizon || K > kMaxExactActions) {
    throw SizeError("exact enumeration supports T <= 6 and K <= 2, got T=" + std::to_string(T) +
                    ", K=" + std::to_string(K));
  }
  if (const auto* ews = std::get_if<Ews>(&learner); ews && uses_bandit_feedback(ews->estimator)) {
    throw ConfigError("exact enumeration covers full-information learners only");
  }
  const NoiseParamsRound noise = NoiseParamsRound::constant(instance.eps, K);
  const double flip = (1.0 - instance.eps) / 2.0;
  const std::size_t patterns = std::size_t{1} << K;

  // Expected online loss from round t onward, given the learner state at round t.
  const auto expected_online = [&](const auto& self, const Learner& state,
                                   std::size_t t) -> double {
    if (t == T) return 0.0;
    const auto q = state.distribution();
    double value = 0.0;
    for (std::size_t i = 0; i < K; ++i) value += q[i] * instance.losses.at(t, i);
    FeedbackVector feedback{FeedbackMode::full_information,
                            std::vector<std::optional<std::uint8_t>>(K)};
    std::vector<double> scratch(K);
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      double prob = 1.0;
      for (std::size_t i = 0; i < K; ++i) {
        const bool flipped = (mask >> i) & 1U;
        prob *= flipped ? flip : 1.0 - flip;
        feedback.values[i] = static_cast<std::uint8_t>(instance.losses.at(t, i) ^ flipped);
      }
      if (prob == 0.0) continue;
      Learner next = state;
      next.observe(feedback, &noise, ActionIndex{0}, scratch);
      value += prob * self(self, next, t + 1);
    }
    return value;
  };

  const Learner initial(learner, K, HypothesisPolicy::count);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < K; ++i) {
    best = std::min(best, static_cast<double>(instance.losses.cumulative(i)));
  }
  return expected_online(expected_online, initial, 0) - best;
}

double binomial_min_threshold(std::size_t n, double p, std::size_t actions) {
  const double nn = static_cast<double>(n);
  return nn * p - std::sqrt(p * nn * std::log(static_cast<double>(actions)) / 9.0);
}

double binomial_min_check(std::size_t n, double p, std::size_t actions, std::size_t reps,
                          RngStream& rng) {
  if (actions < 2) throw std::invalid_argument("binomial_min_check needs K >= 2");
  const double threshold = binomial_min_threshold(n, p, actions);
  std::binomial_distribution<long long> draw(static_cast<long long>(n), p);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t j = 0; j + 1 < actions; ++j) {
      if (static_cast<double>(draw(rng.engine())) <= threshold) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace noisyfb::oracle
