#include "noisyfb/adversaries.hpp"

#include <algorithm>
#include <cmath>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "overloaded.hpp"

namespace noisyfb {

using detail::overloaded;

namespace {

void check_range(const char* what, double v, double lo_exclusive, double hi_inclusive) {
  if (!(v > lo_exclusive && v <= hi_inclusive)) {
    throw ConfigError(std::string(what) + " must lie in (" + format_double(lo_exclusive) + ", " +
                      format_double(hi_inclusive) + "], got " + format_double(v));
  }
}

}  // namespace

void validate(const AdversaryKind& kind, std::size_t actions) {
  if (actions < 2) throw ConfigError("adversary needs K >= 2 actions");
  std::visit(overloaded{
                 [&](const FixedSequence& f) {
                   if (f.losses.horizon() == 0) {
                     throw ConfigError("fixed sequence: loss matrix is empty");
                   }
                   if (f.losses.actions() != actions) {
                     throw ConfigError("fixed sequence: loss matrix has " +
                                       std::to_string(f.losses.actions()) +
                                       " actions, expected K=" + std::to_string(actions));
                   }
                 },
                 [](const StochasticGap& a) { check_range("stochastic-gap delta", a.delta, 0, 0.5); },
                 [](const VariableNoiseFullInfo& a) {
                   check_range("variable-noise theta", a.theta, 0, 1);
                   check_range("variable-noise gap", a.gap, 0, 0.5);
                 },
                 [&](const UnknownNoiseIndist&) {
                   if (actions != 2) {
                     throw ConfigError("unknown-noise-indist is defined for K=2 only");
                   }
                 },
                 [](const BanditGap& a) { check_range("bandit-gap beta", a.beta, 0, 1); },
                 [](const BanditVariableNoise& a) {
                   check_range("bandit-variable-noise theta", a.theta, 0, 1);
                   check_range("bandit-variable-noise beta", a.beta, 0, 0.5);
                 },
             },
             kind);
}

std::string describe(const AdversaryKind& kind) {
  return std::visit(overloaded{
                        [](const FixedSequence&) -> std::string { return "fixed"; },
                        [](const StochasticGap&) -> std::string { return "stochastic-gap"; },
                        [](const VariableNoiseFullInfo&) -> std::string {
                          return "variable-noise";
                        },
                        [](const UnknownNoiseIndist&) -> std::string {
                          return "unknown-noise-indist";
                        },
                        [](const BanditGap&) -> std::string { return "bandit-gap"; },
                        [](const BanditVariableNoise&) -> std::string {
                          return "bandit-variable-noise";
                        },
                    },
                    kind);
}

bool requires_noise(const AdversaryKind& kind) {
  return std::holds_alternative<VariableNoiseFullInfo>(kind) ||
         std::holds_alternative<UnknownNoiseIndist>(kind) ||
         std::holds_alternative<BanditVariableNoise>(kind);
}

Adversary::Adversary(AdversaryKind kind, std::size_t actions, RngStream& rng)
    : kind_(std::move(kind)), actions_(actions) {
  validate(kind_, actions_);
  if (!std::holds_alternative<FixedSequence>(kind_)) planted_ = ActionIndex{rng.below(actions_)};
}

ActionIndex Adversary::planted_best() const {
  if (!planted_) throw NotApplicableError("a fixed loss sequence has no planted best action");
  return *planted_;
}

namespace {

// Planted action ~ B(planted_mean), all others ~ B(1/2).
void draw_gap_round(std::size_t planted, double planted_mean, RngStream& rng,
                    std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rng.bernoulli(i == planted ? planted_mean : 0.5) ? 1 : 0;
  }
}

}  // namespace

void Adversary::assign_losses(std::size_t t, const NoiseParamsRound* realized, RngStream& rng,
                              std::span<std::uint8_t> out) const {
  if (requires_noise() && realized == nullptr) {
    throw ConfigError(describe(kind_) + " must observe the realized noise before assigning losses");
  }
  const std::size_t star = planted_ ? planted_->value : 0;
  std::visit(
      overloaded{
          [&](const FixedSequence& f) {
            const auto row = f.losses.row(t % f.losses.horizon());
            std::copy(row.begin(), row.end(), out.begin());
          },
          [&](const StochasticGap& a) { draw_gap_round(star, 0.5 - a.delta, rng, out); },
          [&](const VariableNoiseFullInfo& a) {
            // Coordinate 0 is the shared eps_t under the shared-uniform model.
            if (realized->eps[0] >= a.theta) {
              std::fill(out.begin(), out.end(), 0);
            } else {
              draw_gap_round(star, 0.5 - a.gap, rng, out);
            }
          },
          [&](const UnknownNoiseIndist&) {
            const std::size_t worse = 1 - star;
            out[star] = rng.bernoulli(0.25) ? 1 : 0;
            out[worse] = realized->p[worse] < 0.25 ? 0 : 1;
          },
          [&](const BanditGap& a) { draw_gap_round(star, (1.0 - a.beta) / 2.0, rng, out); },
          [&](const BanditVariableNoise& a) {
            if (realized->eps[0] >= a.theta) {
              std::fill(out.begin(), out.end(), 0);
            } else {
              draw_gap_round(star, 0.5 - a.beta, rng, out);
            }
          },
      },
      kind_);
}

std::vector<std::uint8_t> Adversary::assign_losses(std::size_t t,
                                                   const NoiseParamsRound* realized,
                                                   RngStream& rng) const {
  std::vector<std::uint8_t> out(actions_);
  assign_losses(t, realized, rng, out);
  return out;
}

double gap_delta(double eps, std::size_t horizon, std::size_t actions) {
  if (!(eps > 0.0)) throw DomainError("gap_delta: eps must be positive");
  const double lnK = std::log(static_cast<double>(actions));
  return std::min(std::sqrt(lnK / static_cast<double>(horizon)) / (6.0 * eps), 0.5);
}

double variable_noise_theta(std::size_t horizon, std::size_t actions) {
  return std::cbrt(std::log(static_cast<double>(actions)) / static_cast<double>(horizon));
}

double bandit_gap_beta(double eps, std::size_t horizon, std::size_t actions, double gamma) {
  if (!(eps > 0.0)) throw DomainError("bandit_gap_beta: eps must be positive");
  const double ratio = static_cast<double>(actions) / static_cast<double>(horizon);
  return std::min(std::sqrt(gamma) / eps * std::sqrt(ratio), 1.0);
}

double bandit_variable_noise_theta(std::size_t horizon, std::size_t actions) {
  return std::cbrt(static_cast<double>(actions) / static_cast<double>(horizon));
}

double bandit_variable_noise_beta(std::size_t horizon, std::size_t actions, double gamma) {
  const double ratio = static_cast<double>(actions) / static_cast<double>(horizon);
  return std::clamp(std::sqrt(gamma) * std::pow(ratio, 1.0 / 6.0), 0.0, 0.5);
}

double bandit_variable_noise_reduced_beta(double theta, std::size_t horizon, std::size_t actions,
                                          double gamma) {
  if (!(theta > 0.0)) throw DomainError("reduced beta needs theta > 0");
  const double informative = theta * static_cast<double>(horizon);
  const double beta =
      std::sqrt(gamma) / theta * std::sqrt(static_cast<double>(actions) / informative);
  return std::min(beta, 0.5);
}

}  // namespace noisyfb
