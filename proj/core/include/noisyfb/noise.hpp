#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "noisyfb/rng.hpp"
#include "noisyfb/types.hpp"

namespace noisyfb {

struct Uniform01 {};

// Density lambda * exp(-lambda x) / (1 - exp(-lambda)) on (0, 1).
struct TruncExp {
  double lambda = 1.0;
};

// CDF F(x) = x^alpha on [0, 1].
struct PowerCdf {
  double alpha = 1.0;
};

using MarginalDist = std::variant<Uniform01, TruncExp, PowerCdf>;

struct ConstantNoise {
  double eps = 1.0;
};

// Each coordinate drawn independently from the same marginal.
struct IidMarginal {
  MarginalDist dist;
};

// One eps_t ~ U(0, 1) copied to every action.
struct SharedUniform {};

class NoiseModel {
 public:
  using Variant = std::variant<ConstantNoise, IidMarginal, SharedUniform>;

  // Validates parameters; throws ConfigError on out-of-range values.
  explicit NoiseModel(Variant v);

  static NoiseModel constant(double eps) { return NoiseModel(ConstantNoise{eps}); }
  static NoiseModel iid(MarginalDist dist) { return NoiseModel(IidMarginal{dist}); }
  static NoiseModel shared_uniform() { return NoiseModel(SharedUniform{}); }

  const Variant& variant() const { return v_; }
  bool is_constant() const { return std::holds_alternative<ConstantNoise>(v_); }

  // Marginal law of a single coordinate; a point mass for constant noise has none.
  std::optional<MarginalDist> marginal() const;

  std::string describe() const;

 private:
  Variant v_;
};

void validate(const MarginalDist& dist);
std::string describe(const MarginalDist& dist);

// Draws one value from the marginal by inversion.
double sample_marginal(const MarginalDist& dist, RngStream& rng);

NoiseParamsRound sample_noise_round(const NoiseModel& model, std::size_t actions, RngStream& rng);

// In-place variant for the episode hot loop; reuses the buffers in out.
void sample_noise_round(const NoiseModel& model, std::size_t actions, RngStream& rng,
                        NoiseParamsRound& out);

// loss xor Bernoulli((1 - eps) / 2).
std::uint8_t corrupt(std::uint8_t loss, double eps, RngStream& rng);

double cdf(const MarginalDist& dist, double x);

// g(theta) = E[eps^-2 ; eps >= theta] in closed form. Throws DomainError for theta <= 0.
double second_moment_weight(const MarginalDist& dist, double theta);

}  // namespace noisyfb
