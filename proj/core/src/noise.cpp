#include "noisyfb/noise.hpp"

#include <cmath>
#include <string>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "overloaded.hpp"

namespace noisyfb {

namespace {

using detail::overloaded;

// E1(z) = int_z^inf e^-t / t dt for z > 0.
double exponential_integral_e1(double z) { return -std::expint(-z); }

}  // namespace

void validate(const MarginalDist& dist) {
  std::visit(overloaded{
                 [](const Uniform01&) {},
                 [](const TruncExp& d) {
                   if (!(d.lambda > 0.0) || !std::isfinite(d.lambda)) {
                     throw ConfigError("truncexp: lambda must be a positive finite real");
                   }
                 },
                 [](const PowerCdf& d) {
                   if (!(d.alpha > 0.0) || !std::isfinite(d.alpha)) {
                     throw ConfigError("power: alpha must be a positive finite real");
                   }
                 },
             },
             dist);
}

std::string describe(const MarginalDist& dist) {
  return std::visit(
      overloaded{
          [](const Uniform01&) -> std::string { return "uniform"; },
          [](const TruncExp& d) { return "truncexp(lambda=" + format_double(d.lambda) + ")"; },
          [](const PowerCdf& d) { return "power(alpha=" + format_double(d.alpha) + ")"; },
      },
      dist);
}

NoiseModel::NoiseModel(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const ConstantNoise& c) {
                   if (!(c.eps >= 0.0 && c.eps <= 1.0)) {
                     throw ConfigError("constant noise: eps must lie in [0, 1], got " +
                                       format_double(c.eps));
                   }
                 },
                 [](const IidMarginal& m) { validate(m.dist); },
                 [](const SharedUniform&) {},
             },
             v_);
}

std::optional<MarginalDist> NoiseModel::marginal() const {
  return std::visit(overloaded{
                        [](const ConstantNoise&) -> std::optional<MarginalDist> {
                          return std::nullopt;
                        },
                        [](const IidMarginal& m) -> std::optional<MarginalDist> { return m.dist; },
                        [](const SharedUniform&) -> std::optional<MarginalDist> {
                          return Uniform01{};
                        },
                    },
                    v_);
}

std::string NoiseModel::describe() const {
  return std::visit(
      overloaded{
          [](const ConstantNoise& c) { return "eps=" + format_double(c.eps); },
          [](const IidMarginal& m) { return noisyfb::describe(m.dist); },
          [](const SharedUniform&) -> std::string { return "shared-uniform"; },
      },
      v_);
}

double sample_marginal(const MarginalDist& dist, RngStream& rng) {
  const double u = rng.uniform();
  return std::visit(overloaded{
                        [u](const Uniform01&) { return u; },
                        [u](const TruncExp& d) {
                          // Inverse CDF: -ln(1 - u (1 - e^-lambda)) / lambda.
                          return -std::log1p(u * std::expm1(-d.lambda)) / d.lambda;
                        },
                        [u](const PowerCdf& d) { return std::pow(u, 1.0 / d.alpha); },
                    },
                    dist);
}

void sample_noise_round(const NoiseModel& model, std::size_t actions, RngStream& rng,
                        NoiseParamsRound& out) {
  out.eps.resize(actions);
  out.p.resize(actions);
  std::visit(overloaded{
                 [&](const ConstantNoise& c) {
                   std::fill(out.eps.begin(), out.eps.end(), c.eps);
                 },
                 [&](const IidMarginal& m) {
                   for (auto& e : out.eps) e = sample_marginal(m.dist, rng);
                 },
                 [&](const SharedUniform&) {
                   std::fill(out.eps.begin(), out.eps.end(), rng.uniform());
                 },
             },
             model.variant());
  for (std::size_t i = 0; i < actions; ++i) out.p[i] = (1.0 - out.eps[i]) / 2.0;
}

NoiseParamsRound sample_noise_round(const NoiseModel& model, std::size_t actions,
                                    RngStream& rng) {
  NoiseParamsRound out;
  sample_noise_round(model, actions, rng, out);
  return out;
}

std::uint8_t corrupt(std::uint8_t loss, double eps, RngStream& rng) {
  const bool flip = rng.bernoulli((1.0 - eps) / 2.0);
  return static_cast<std::uint8_t>(loss ^ static_cast<std::uint8_t>(flip));
}

double cdf(const MarginalDist& dist, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::visit(overloaded{
                        [x](const Uniform01&) { return x; },
                        [x](const TruncExp& d) {
                          return std::expm1(-d.lambda * x) / std::expm1(-d.lambda);
                        },
                        [x](const PowerCdf& d) { return std::pow(x, d.alpha); },
                    },
                    dist);
}

double second_moment_weight(const MarginalDist& dist, double theta) {
  if (!(theta > 0.0)) {
    throw DomainError("g(theta) diverges for theta <= 0 (got " + format_double(theta) + ")");
  }
  if (theta >= 1.0) return 0.0;
  return std::visit(
      overloaded{
          [theta](const Uniform01&) { return 1.0 / theta - 1.0; },
          [theta](const TruncExp& d) {
            const double lam = d.lambda;
            const double norm = -lam / std::expm1(-lam);
            // int_theta^1 e^{-lam x} / x^2 dx, integrated by parts.
            const double integral = std::exp(-lam * theta) / theta - std::exp(-lam) -
                                    lam * (exponential_integral_e1(lam * theta) -
                                           exponential_integral_e1(lam));
            return norm * integral;
          },
          [theta](const PowerCdf& d) {
            const double a = d.alpha;
            if (std::abs(a - 2.0) < 1e-12) return -2.0 * std::log(theta);
            return a * (1.0 - std::pow(theta, a - 2.0)) / (a - 2.0);
          },
      },
      dist);
}

}  // namespace noisyfb
