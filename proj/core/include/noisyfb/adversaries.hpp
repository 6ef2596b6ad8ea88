#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "noisyfb/rng.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb {

// Replays a fixed loss matrix; round t uses row t mod horizon.
struct FixedSequence {
  LossMatrix losses;
};

// Planted action ~ B(1/2 - delta), all others ~ B(1/2).
struct StochasticGap {
  double delta = 0.1;
};

// Reads the round's shared eps_t. If eps_t >= theta every loss is 0; otherwise the planted
// action ~ B(1/2 - gap) and the others ~ B(1/2).
struct VariableNoiseFullInfo {
  double theta = 0.1;
  double gap = 1.0 / 6.0;
};

// Two actions. Planted ~ B(1/4); the other action's loss is 0 iff its realized p < 1/4, else 1.
// Both feedback streams are then B(3/8) under uniform marginals.
struct UnknownNoiseIndist {};

// Planted action ~ B((1 - beta) / 2), all others ~ B(1/2).
struct BanditGap {
  double beta = 0.1;
};

// Reads eps_t. All-zero when eps_t >= theta; otherwise planted ~ B(1/2 - beta), others B(1/2).
struct BanditVariableNoise {
  double theta = 0.1;
  double beta = 0.1;
};

using AdversaryKind = std::variant<FixedSequence, StochasticGap, VariableNoiseFullInfo,
                                   UnknownNoiseIndist, BanditGap, BanditVariableNoise>;

void validate(const AdversaryKind& kind, std::size_t actions);
std::string describe(const AdversaryKind& kind);
bool requires_noise(const AdversaryKind& kind);

class Adversary {
 public:
  // Stochastic variants draw their planted action uniformly from rng at construction.
  Adversary(AdversaryKind kind, std::size_t actions, RngStream& rng);

  const AdversaryKind& kind() const { return kind_; }
  std::size_t actions() const { return actions_; }
  bool requires_noise() const { return noisyfb::requires_noise(kind_); }

  // Throws NotApplicableError for FixedSequence.
  ActionIndex planted_best() const;
  bool has_planted() const { return planted_.has_value(); }

  // realized is nullptr when the adversary is not shown the round's noise; noise-adaptive
  // variants then throw ConfigError.
  void assign_losses(std::size_t t, const NoiseParamsRound* realized, RngStream& rng,
                     std::span<std::uint8_t> out) const;
  std::vector<std::uint8_t> assign_losses(std::size_t t, const NoiseParamsRound* realized,
                                          RngStream& rng) const;

 private:
  AdversaryKind kind_;
  std::size_t actions_;
  std::optional<ActionIndex> planted_;
};

// min{ sqrt(ln K / T) / (6 eps), 1/2 }. Throws DomainError for eps <= 0.
double gap_delta(double eps, std::size_t horizon, std::size_t actions);

// (ln K / T)^(1/3), the informative-round threshold of the variable-noise construction.
double variable_noise_theta(std::size_t horizon, std::size_t actions);

// min{ sqrt(gamma) / eps * sqrt(K / T), 1 }.
double bandit_gap_beta(double eps, std::size_t horizon, std::size_t actions, double gamma);

// (K / T)^(1/3).
double bandit_variable_noise_theta(std::size_t horizon, std::size_t actions);

// sqrt(gamma) * (K / T)^(1/6), clamped to 1/2 so that 1/2 - beta is a valid mean.
double bandit_variable_noise_beta(std::size_t horizon, std::size_t actions, double gamma);

// Gap that turns the informative rounds (a theta fraction of T, noise level at least theta) into
// the constant-noise bandit construction: sqrt(gamma) / theta * sqrt(K / (theta T)), clamped to
// 1/2. At theta = (K / T)^(1/3) this is sqrt(gamma), independent of T.
double bandit_variable_noise_reduced_beta(double theta, std::size_t horizon, std::size_t actions,
                                          double gamma);

}  // namespace noisyfb
