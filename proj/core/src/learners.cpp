#include "noisyfb/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "overloaded.hpp"

namespace noisyfb {

using detail::overloaded;

EwsState::EwsState(std::size_t actions, double eta) : log_weights_(actions, 0.0), eta_(eta) {
  if (actions < 2) throw ConfigError("exponential weights needs K >= 2 actions");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ConfigError("learning rate eta must be positive, got " + format_double(eta));
  }
}

void EwsState::apply(std::span<const double> estimates) {
  for (std::size_t i = 0; i < log_weights_.size(); ++i) log_weights_[i] -= eta_ * estimates[i];
  ++round_;
}

void select_distribution(const EwsState& state, std::span<double> out) {
  const auto lw = state.log_weights();
  const double top = *std::max_element(lw.begin(), lw.end());
  double total = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    out[i] = std::exp(lw[i] - top);
    total += out[i];
  }
  for (auto& v : out) v /= total;
}

std::vector<double> select_distribution(const EwsState& state) {
  std::vector<double> q(state.actions());
  select_distribution(state, q);
  return q;
}

double hypothesis_load(double eta, std::span<const double> estimates) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double e : estimates) worst = std::max(worst, -eta * e);
  return worst;
}

EwsState update(const EwsState& state, std::span<const double> estimates) {
  if (estimates.size() != state.actions()) {
    throw ConfigError("update: expected " + std::to_string(state.actions()) +
                      " estimates, got " + std::to_string(estimates.size()));
  }
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (-state.eta() * estimates[i] > 1.0) {
      throw HypothesisError("boundedness -eta*estimate <= 1 violated at action " +
                            std::to_string(i) + ": eta=" + format_double(state.eta()) +
                            ", estimate=" + format_double(estimates[i]));
    }
  }
  EwsState next = state;
  next.apply(estimates);
  return next;
}

std::string describe(const LearnerKind& kind) {
  return std::visit(overloaded{
                        [](const Ews& e) -> std::string {
                          return std::visit(
                              overloaded{
                                  [](const UnbiasedConstant&) { return "ews-unbiased"; },
                                  [](const Raw&) { return "ews-raw"; },
                                  [](const ThresholdFull&) { return "ew-threshold"; },
                                  [](const BanditImportance&) { return "ews-bandit"; },
                                  [](const Exp3Threshold&) { return "exp3-threshold"; },
                              },
                              e.estimator);
                        },
                        [](const FollowNoisyLeader&) -> std::string {
                          return "follow-noisy-leader";
                        },
                        [](const UniformRandom&) -> std::string { return "uniform"; },
                    },
                    kind);
}

bool needs_realized_noise(const LearnerKind& kind) {
  const auto* ews = std::get_if<Ews>(&kind);
  return ews != nullptr && needs_realized_noise(ews->estimator);
}

Learner::Learner(LearnerKind kind, std::size_t actions, HypothesisPolicy policy)
    : kind_(std::move(kind)), actions_(actions), policy_(policy), q_(actions, 0.0) {
  if (actions < 2) throw ConfigError("learner needs K >= 2 actions");
  if (const auto* ews = std::get_if<Ews>(&kind_)) {
    validate(ews->estimator);
    ews_.emplace_back(actions, ews->eta);
  } else if (std::holds_alternative<FollowNoisyLeader>(kind_)) {
    cumulative_.assign(actions, 0.0);
  }
  refresh_distribution();
}

const EwsState* Learner::ews_state() const { return ews_.empty() ? nullptr : &ews_.front(); }

void Learner::refresh_distribution() {
  if (!ews_.empty()) {
    select_distribution(ews_.front(), q_);
  } else if (!cumulative_.empty()) {
    const auto leader = std::min_element(cumulative_.begin(), cumulative_.end());
    std::fill(q_.begin(), q_.end(), 0.0);
    q_[static_cast<std::size_t>(leader - cumulative_.begin())] = 1.0;
  } else {
    std::fill(q_.begin(), q_.end(), 1.0 / static_cast<double>(actions_));
  }
}

void Learner::observe(const FeedbackVector& feedback, const NoiseParamsRound* noise,
                      ActionIndex played, std::span<double> estimates) {
  if (const auto* ews = std::get_if<Ews>(&kind_)) {
    const bool reads_noise = noisyfb::needs_realized_noise(ews->estimator);
    if (reads_noise && noise == nullptr) {
      throw ConfigError(describe(kind_) + " needs the realized noise but the setting hides it");
    }
    for (std::size_t i = 0; i < actions_; ++i) {
      EstimateInput in{feedback.values[i], reads_noise ? noise->eps[i] : 1.0, q_[i],
                       i == played.value};
      estimates[i] = estimate(ews->estimator, in);
    }
    auto& state = ews_.front();
    if (hypothesis_load(state.eta(), estimates) > 1.0) {
      if (policy_ == HypothesisPolicy::enforce) {
        try {
          (void)update(state, estimates);
        } catch (const HypothesisError& e) {
          throw HypothesisError(describe(kind_) + ": " + e.what());
        }
      }
      ++violations_;
    }
    state.apply(estimates);
  } else if (!cumulative_.empty()) {
    for (std::size_t i = 0; i < actions_; ++i) {
      estimates[i] = feedback.values[i] ? static_cast<double>(*feedback.values[i]) : 0.0;
      cumulative_[i] += estimates[i];
    }
  } else {
    std::fill(estimates.begin(), estimates.end(), 0.0);
  }
  refresh_distribution();
}

std::string describe(const Setting& s) {
  std::string out;
  switch (s.model) {
    case FeedbackModel::full_constant: out = "full-const"; break;
    case FeedbackModel::full_variable: out = "full-var"; break;
    case FeedbackModel::bandit_constant: out = "bandit-const"; break;
    case FeedbackModel::bandit_variable: out = "bandit-var"; break;
  }
  return out + (s.noise_known ? "-known" : "-unknown");
}

namespace {

void check_sizes(std::size_t horizon, std::size_t actions) {
  if (horizon < 2) throw ConfigError("T must be at least 2");
  if (actions < 2) throw ConfigError("K must be at least 2");
}

}  // namespace

double default_eta(const Setting& setting, double eps, std::size_t horizon,
                   std::size_t actions) {
  check_sizes(horizon, actions);
  const double T = static_cast<double>(horizon);
  const double K = static_cast<double>(actions);
  const double lnK = std::log(K);
  const auto need_eps = [eps] {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw ConfigError("eps must lie in (0, 1] to set the learning rate, got " +
                        format_double(eps));
    }
  };
  switch (setting.model) {
    case FeedbackModel::full_constant:
      need_eps();
      return eps * std::sqrt(lnK / T);
    case FeedbackModel::bandit_constant:
      need_eps();
      return eps * std::sqrt(lnK / (T * K));
    case FeedbackModel::full_variable:
      if (!setting.noise_known) break;
      return std::pow(lnK / T, 2.0 / 3.0);
    case FeedbackModel::bandit_variable:
      if (!setting.noise_known) break;
      return std::pow(lnK, 2.0 / 3.0) / (std::cbrt(K) * std::pow(T, 2.0 / 3.0));
  }
  throw ConfigError("no tuned learning rate for setting " + describe(setting) +
                    "; set eta explicitly");
}

double default_theta(const Setting& setting, std::size_t horizon, std::size_t actions) {
  check_sizes(horizon, actions);
  const double T = static_cast<double>(horizon);
  const double K = static_cast<double>(actions);
  const double lnK = std::log(K);
  switch (setting.model) {
    case FeedbackModel::full_variable:
      return std::cbrt(lnK / T);
    case FeedbackModel::bandit_variable:
      return std::cbrt(K * lnK / T);
    default:
      break;
  }
  throw ConfigError("setting " + describe(setting) + " has no noise threshold");
}

double general_eta(double g, std::size_t horizon, std::size_t actions) {
  check_sizes(horizon, actions);
  if (!(g > 0.0)) throw DomainError("general learning rate needs g(theta) > 0");
  return std::sqrt(std::log(static_cast<double>(actions)) / (static_cast<double>(horizon) * g));
}

}  // namespace noisyfb
