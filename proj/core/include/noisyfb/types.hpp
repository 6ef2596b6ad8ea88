#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace noisyfb {

struct ActionIndex {
  std::size_t value = 0;

  friend auto operator<=>(const ActionIndex&, const ActionIndex&) = default;
};

// T x K matrix of binary losses, row-major by round.
class LossMatrix {
 public:
  LossMatrix() = default;
  LossMatrix(std::size_t horizon, std::size_t actions);

  // Each row must have the same length and contain only 0/1.
  static LossMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t horizon() const { return horizon_; }
  std::size_t actions() const { return actions_; }

  std::uint8_t at(std::size_t t, std::size_t i) const { return entries_[t * actions_ + i]; }
  void set(std::size_t t, std::size_t i, bool loss) { entries_[t * actions_ + i] = loss ? 1 : 0; }
  std::span<const std::uint8_t> row(std::size_t t) const {
    return {entries_.data() + t * actions_, actions_};
  }

  // Sum over rounds of action i's loss.
  std::size_t cumulative(std::size_t i) const;

  bool operator==(const LossMatrix&) const = default;

 private:
  std::size_t horizon_ = 0;
  std::size_t actions_ = 0;
  std::vector<std::uint8_t> entries_;
};

// Realized noise of one round. p[i] = (1 - eps[i]) / 2 is the flip probability.
struct NoiseParamsRound {
  std::vector<double> eps;
  std::vector<double> p;

  // Throws DomainError unless every eps is in [0, 1].
  static NoiseParamsRound from_eps(std::vector<double> eps);
  static NoiseParamsRound constant(double eps, std::size_t actions);

  std::size_t size() const { return eps.size(); }
  bool operator==(const NoiseParamsRound&) const = default;
};

enum class FeedbackMode { full_information, bandit };

struct FeedbackVector {
  FeedbackMode mode = FeedbackMode::full_information;
  std::vector<std::optional<std::uint8_t>> values;

  std::size_t present_count() const;
  bool operator==(const FeedbackVector&) const = default;
};

struct RoundRecord {
  std::size_t t = 0;
  NoiseParamsRound noise;
  std::vector<double> q;
  ActionIndex played;
  FeedbackVector feedback;
  std::vector<double> estimates;
  std::vector<std::uint8_t> true_loss;
  double incurred_loss = 0.0;  // loss of the sampled action

  bool operator==(const RoundRecord&) const = default;
};

struct RegretTrace {
  // per_round[t] is the pseudo-regret of the prefix of rounds 0..t.
  std::vector<double> per_round;
  // Realized best action at the horizon (lowest index on ties).
  ActionIndex best_action;
  // Sum of sampled-action losses minus the best action's loss.
  double realized_regret = 0.0;
  // Planted action of stochastic adversaries, and pseudo-regret measured against it.
  std::optional<ActionIndex> planted;
  std::optional<double> planted_regret;
  // Rounds in which some -eta * estimate exceeded 1.
  std::size_t hypothesis_violations = 0;

  double final_regret() const { return per_round.empty() ? 0.0 : per_round.back(); }
  bool operator==(const RegretTrace&) const = default;
};

}  // namespace noisyfb
