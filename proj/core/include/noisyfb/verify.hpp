#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace noisyfb {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Unbiased inversion of a feedback bit given its flip probability p.
using InversionFn = std::function<double(std::uint8_t c, double p)>;

// E[est] == loss and E[est^2] <= 1/eps^2 on the eps grid {0.05, ..., 0.95}, by enumeration.
CheckResult check_unbiasedness(const InversionFn& inversion);

// Individual oracle grids; verify_suite runs them all.
CheckResult check_estimator_moments();
CheckResult check_ews_inequality_fuzz(std::size_t cases, std::uint64_t seed = 1);
CheckResult check_quadrature_uniform();
CheckResult check_quadrature_closed_forms();
CheckResult check_tiny_instances(std::size_t episodes);
CheckResult check_indistinguishable_feedback(std::size_t samples, double tolerance = 0.003);
CheckResult check_binomial_minimum(std::size_t reps = 10'000);

struct VerifyOptions {
  std::size_t inequality_fuzz_cases = 10'000;
  std::size_t monte_carlo_episodes = 100'000;
  std::size_t indistinguishability_samples = 1'000'000;
};

// Runs every oracle grid: estimator moments, exponential-weights inequality fuzz, quadrature
// closed forms, tiny-instance exact vs Monte Carlo, and the indistinguishable-feedback check.
VerifyReport verify_suite(const VerifyOptions& options = {});

void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace noisyfb
