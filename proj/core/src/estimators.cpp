#include "noisyfb/estimators.hpp"

#include <stdexcept>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "overloaded.hpp"

namespace noisyfb {

using detail::overloaded;

double est_unbiased_constant(std::uint8_t c, double p) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw DomainError("unbiased estimator needs flip probability p in [0, 1/2), got " +
                      format_double(p) + " (eps = 0 carries no information)");
  }
  return (static_cast<double>(c) - p) / (1.0 - 2.0 * p);
}

double est_raw(std::uint8_t c) { return static_cast<double>(c); }

double est_threshold_full(std::uint8_t c, double eps, double theta) {
  // Kept when eps == theta.
  if (eps < theta) return 0.0;
  const double p = (1.0 - eps) / 2.0;
  return (static_cast<double>(c) - p) / (1.0 - 2.0 * p);
}

double est_bandit_importance(std::uint8_t c, double q_i, bool played) {
  if (!played) return 0.0;
  if (!(q_i > 0.0)) {
    throw std::logic_error("played action has nonpositive probability " + format_double(q_i));
  }
  return static_cast<double>(c) / q_i;
}

double est_exp3_threshold(std::uint8_t c, double eps, double theta, double q_i, bool played) {
  if (!played || eps < theta) return 0.0;
  if (!(q_i > 0.0)) {
    throw std::logic_error("played action has nonpositive probability " + format_double(q_i));
  }
  const double p = (1.0 - eps) / 2.0;
  return (static_cast<double>(c) - p) / (1.0 - 2.0 * p) / q_i;
}

namespace {

std::uint8_t required(const EstimateInput& in) {
  if (!in.feedback) {
    throw std::logic_error("full-information estimator received absent feedback");
  }
  return *in.feedback;
}

}  // namespace

double estimate(const EstimatorKind& kind, const EstimateInput& in) {
  return std::visit(
      overloaded{
          [&](const UnbiasedConstant& k) { return est_unbiased_constant(required(in), k.p); },
          [&](const Raw&) { return est_raw(required(in)); },
          [&](const ThresholdFull& k) {
            return est_threshold_full(required(in), in.eps, k.theta);
          },
          [&](const BanditImportance&) {
            if (!in.played) return 0.0;
            return est_bandit_importance(required(in), in.q, true);
          },
          [&](const Exp3Threshold& k) {
            if (!in.played) return 0.0;
            return est_exp3_threshold(required(in), in.eps, k.theta, in.q, true);
          },
      },
      kind);
}

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ConfigError("theta must lie in (0, 1), got " + format_double(theta));
  }
}

}  // namespace

void validate(const EstimatorKind& kind) {
  std::visit(overloaded{
                 [](const UnbiasedConstant& k) {
                   if (!(k.p >= 0.0 && k.p < 0.5)) {
                     throw ConfigError("unbiased estimator: p must lie in [0, 1/2), got " +
                                       format_double(k.p) + " (needs eps > 0)");
                   }
                 },
                 [](const Raw&) {},
                 [](const ThresholdFull& k) { check_theta(k.theta); },
                 [](const BanditImportance&) {},
                 [](const Exp3Threshold& k) { check_theta(k.theta); },
             },
             kind);
}

bool needs_realized_noise(const EstimatorKind& kind) {
  return std::holds_alternative<ThresholdFull>(kind) ||
         std::holds_alternative<Exp3Threshold>(kind);
}

bool uses_bandit_feedback(const EstimatorKind& kind) {
  return std::holds_alternative<BanditImportance>(kind) ||
         std::holds_alternative<Exp3Threshold>(kind);
}

std::string describe(const EstimatorKind& kind) {
  return std::visit(overloaded{
                        [](const UnbiasedConstant&) -> std::string { return "unbiased"; },
                        [](const Raw&) -> std::string { return "raw"; },
                        [](const ThresholdFull&) -> std::string { return "threshold"; },
                        [](const BanditImportance&) -> std::string { return "importance"; },
                        [](const Exp3Threshold&) -> std::string { return "exp3-threshold"; },
                    },
                    kind);
}

}  // namespace noisyfb
