#include "noisyfb/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "noisyfb/error.hpp"
#include "noisyfb/estimators.hpp"
#include "noisyfb/format.hpp"
#include "noisyfb/harness.hpp"
#include "noisyfb/oracle.hpp"

namespace noisyfb {

namespace {

constexpr double kExact = 1e-12;

std::vector<double> eps_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

std::string fmt(double v) { return format_double(v); }

struct TinyCase {
  std::vector<std::vector<int>> losses;
  double eps;
  LearnerKind learner;
};

std::vector<TinyCase> tiny_cases() {
  const std::vector<std::vector<int>> constant_gap(6, {0, 1});
  const std::vector<std::vector<int>> alternating{{0, 1}, {1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}};
  const std::vector<std::vector<int>> mixed{{1, 0}, {0, 0}, {0, 1}, {1, 1}, {0, 1}, {0, 1}};
  const auto head = [](const std::vector<std::vector<int>>& rows, std::size_t n) {
    return std::vector<std::vector<int>>(rows.begin(), rows.begin() + static_cast<long>(n));
  };
  const auto unbiased = [](double eps, double eta) {
    return LearnerKind{Ews{UnbiasedConstant{(1.0 - eps) / 2.0}, eta}};
  };
  return {
      {head(constant_gap, 1), 0.5, UniformRandom{}},
      {head(constant_gap, 4), 0.5, unbiased(0.5, 0.5)},
      {alternating, 0.3, unbiased(0.3, 0.3)},
      {head(mixed, 5), 0.5, Ews{Raw{}, 0.4}},
      {constant_gap, 0.2, FollowNoisyLeader{}},
      {alternating, 0.6, FollowNoisyLeader{}},
      {head(constant_gap, 3), 1.0, unbiased(1.0, 1.0)},
      {mixed, 0.8, unbiased(0.8, 0.2)},
      {mixed, 0.5, UniformRandom{}},
      {alternating, 0.1, Ews{Raw{}, 1.0}},
  };
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult check_unbiasedness(const InversionFn& inversion) {
  CheckResult result{"unbiased inversion: E[est] = loss, E[est^2] <= 1/eps^2", true, {}};
  double worst_bias = 0.0;
  double worst_excess = -1e300;
  const oracle::EstimatorFn fn = [&](const EstimateInput& in) {
    return inversion(*in.feedback, (1.0 - in.eps) / 2.0);
  };
  for (const double eps : eps_grid()) {
    for (std::uint8_t loss = 0; loss <= 1; ++loss) {
      const auto m = oracle::enumerate_estimator_moments(fn, loss, eps);
      worst_bias = std::max(worst_bias, std::abs(m.mean - loss));
      worst_excess = std::max(worst_excess, m.second_moment - 1.0 / (eps * eps));
    }
  }
  result.passed = worst_bias <= kExact && worst_excess <= kExact;
  result.detail = "max |bias| = " + fmt(worst_bias) +
                  ", max E[est^2] - 1/eps^2 = " + fmt(worst_excess);
  return result;
}

CheckResult check_estimator_moments() {
  CheckResult unbiased = check_unbiasedness(
      [](std::uint8_t c, double p) { return est_unbiased_constant(c, p); });
  double raw_err = 0.0;
  double threshold_err = 0.0;
  double bandit_err = 0.0;
  for (const double eps : eps_grid()) {
    const double p = (1.0 - eps) / 2.0;
    for (std::uint8_t loss = 0; loss <= 1; ++loss) {
      const auto raw = oracle::enumerate_estimator_moments(Raw{}, loss, eps);
      raw_err = std::max(raw_err, std::abs(raw.mean - std::abs(loss - p)));
      const auto thr = oracle::enumerate_estimator_moments(ThresholdFull{0.5}, loss, eps);
      const double want = eps >= 0.5 ? loss : 0.0;
      threshold_err = std::max(threshold_err, std::abs(thr.mean - want));
      for (const double q : {0.1, 0.5, 0.9}) {
        const auto imp = oracle::enumerate_estimator_moments(BanditImportance{}, loss, eps, q);
        bandit_err = std::max(bandit_err, std::abs(imp.mean - std::abs(loss - p)));
        const auto exp3 = oracle::enumerate_estimator_moments(Exp3Threshold{0.5}, loss, eps, q);
        bandit_err = std::max(bandit_err, std::abs(exp3.mean - want));
      }
    }
  }
  CheckResult result;
  result.name = "estimator moments";
  result.passed = unbiased.passed && raw_err <= kExact && threshold_err <= kExact &&
                  bandit_err <= kExact;
  result.detail = unbiased.detail + "; raw |E - |l-p|| = " + fmt(raw_err) +
                  "; threshold " + fmt(threshold_err) + "; bandit " + fmt(bandit_err);
  return result;
}

CheckResult check_ews_inequality_fuzz(std::size_t cases, std::uint64_t seed) {
  RngStream rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t K = 2 + rng.below(15);
    const std::size_t T = 1 + rng.below(64);
    const double eta = std::exp(std::log(1e-3) + rng.uniform() * (std::log(2.0) - std::log(1e-3)));
    const double low = -1.0 / eta;
    const double span = rng.bernoulli(0.5) ? 2.0 : 2.0 / eta;
    std::vector<std::vector<double>> table(T, std::vector<double>(K));
    for (auto& row : table) {
      for (auto& v : row) {
        const double u = rng.uniform();
        v = u < 0.05 ? low : (u < 0.1 ? 0.0 : low + rng.uniform() * (span - low));
      }
    }
    worst = std::min(worst, oracle::check_ews_inequality(table, eta));
  }
  return {"exponential-weights inequality fuzz", worst >= -1e-9,
          std::to_string(cases) + " cases, min margin = " + fmt(worst)};
}

CheckResult check_quadrature_uniform() {
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double theta = 0.01 * i;
    worst = std::max(worst, std::abs(oracle::quadrature_g(Uniform01{}, theta) - (1.0 / theta - 1.0)));
  }
  return {"quadrature g(theta) = 1/theta - 1 (uniform)", worst <= 1e-8,
          "99-point grid, max error = " + fmt(worst)};
}

CheckResult check_quadrature_closed_forms() {
  double worst = 0.0;
  const std::vector<MarginalDist> dists{TruncExp{0.5}, TruncExp{1.0}, TruncExp{2.0},
                                        PowerCdf{0.5}, PowerCdf{1.0},  PowerCdf{2.0},
                                        PowerCdf{3.0}};
  for (const auto& d : dists) {
    for (int i = 1; i <= 99; ++i) {
      const double theta = 0.01 * i;
      const double closed = second_moment_weight(d, theta);
      const double quad = oracle::quadrature_g(d, theta);
      worst = std::max(worst, std::abs(closed - quad) / std::max(1.0, std::abs(quad)));
    }
  }
  return {"closed-form g(theta) vs quadrature (truncexp, power)", worst <= 1e-8,
          "max relative error = " + fmt(worst)};
}

CheckResult check_tiny_instances(std::size_t episodes) {
  CheckResult result{"tiny instances: exact vs Monte Carlo within 4 stderr", true, {}};
  std::ostringstream detail;
  std::size_t index = 0;
  for (const auto& tc : tiny_cases()) {
    const LossMatrix losses = LossMatrix::from_rows(tc.losses);
    const double exact = oracle::exact_expected_pseudo_regret({losses, tc.eps}, tc.learner);
    ExperimentConfig config;
    config.setting = Setting{FeedbackModel::full_constant, true};
    config.actions = losses.actions();
    config.horizon = losses.horizon();
    config.noise = NoiseModel::constant(tc.eps);
    config.learner = tc.learner;
    config.adversary = FixedSequence{losses};
    config.seeds.resize(episodes);
    for (std::size_t s = 0; s < episodes; ++s) config.seeds[s] = s;
    config.root_seed = 1000 + index;
    const RegretSummary mc = replicate(config);
    const double diff = std::abs(mc.mean_regret - exact);
    const bool ok = diff <= 4.0 * mc.std_error + 1e-9;
    result.passed = result.passed && ok;
    detail << (index == 0 ? "" : "; ") << '#' << index << ' ' << (ok ? "ok" : "FAIL")
           << " exact=" << fmt(exact) << " mc=" << fmt(mc.mean_regret)
           << " se=" << fmt(mc.std_error);
    ++index;
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_indistinguishable_feedback(std::size_t samples, double tolerance) {
  ExperimentConfig config;
  config.setting = Setting{FeedbackModel::full_variable, false};
  config.actions = 2;
  config.horizon = samples;
  config.noise = NoiseModel::iid(Uniform01{});
  config.learner = UniformRandom{};
  config.adversary = UnknownNoiseIndist{};
  config.root_seed = 7;
  std::array<double, 2> ones{0.0, 0.0};
  (void)run_episode(config, 0, [&](const RoundRecord& r) {
    for (std::size_t i = 0; i < 2; ++i) ones[i] += *r.feedback.values[i];
  });
  const double n = static_cast<double>(samples);
  const double m0 = ones[0] / n;
  const double m1 = ones[1] / n;
  const bool ok = std::abs(m0 - 0.375) <= tolerance && std::abs(m1 - 0.375) <= tolerance;
  return {"indistinguishable feedback means = 3/8", ok,
          std::to_string(samples) + " samples, means " + fmt(m0) + ", " + fmt(m1)};
}

CheckResult check_binomial_minimum(std::size_t reps) {
  RngStream rng(11);
  const double a = oracle::binomial_min_check(100, 0.3, 1000, reps, rng);
  const double b = oracle::binomial_min_check(200, 0.4, 10'000, reps, rng);
  return {"minimum of binomials below np - sqrt(pn lnK / 9) w.p. >= 1/2", a >= 0.5 && b >= 0.5,
          "(100, 0.3, 1000): " + fmt(a) + ", (200, 0.4, 1e4): " + fmt(b)};
}

VerifyReport verify_suite(const VerifyOptions& options) {
  VerifyReport report;
  report.checks.push_back(check_estimator_moments());
  report.checks.push_back(check_ews_inequality_fuzz(options.inequality_fuzz_cases));
  report.checks.push_back(check_quadrature_uniform());
  report.checks.push_back(check_quadrature_closed_forms());
  report.checks.push_back(check_tiny_instances(options.monte_carlo_episodes));
  report.checks.push_back(check_indistinguishable_feedback(options.indistinguishability_samples));
  report.checks.push_back(check_binomial_minimum());
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  out << (report.all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace noisyfb
