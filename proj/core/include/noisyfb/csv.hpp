#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "noisyfb/format.hpp"
#include "noisyfb/harness.hpp"

namespace noisyfb {

inline constexpr std::string_view kCsvHeader =
    "setting,learner,adversary,K,T,eps_or_dist,eta,theta,seed_count,mean_regret,stderr,"
    "theoretical_bound,fitted_exponent";

struct CsvRow {
  std::string setting;
  std::string learner;
  std::string adversary;
  std::size_t actions = 0;
  std::size_t horizon = 0;
  std::string eps_or_dist;
  std::optional<double> eta;
  std::optional<double> theta;
  std::size_t seed_count = 0;
  double mean_regret = 0.0;
  double std_error = 0.0;
  std::optional<double> theoretical_bound;
  std::optional<double> fitted_exponent;
};

CsvRow make_row(const ExperimentConfig& config, const RegretSummary& summary);

// Header plus rows sorted by (T, K, learner). Throws std::invalid_argument on empty rows.
void write_csv(std::ostream& out, std::vector<CsvRow> rows);
// Throws IoError naming the path if it cannot be written.
void emit_csv(std::vector<CsvRow> rows, const std::filesystem::path& path);

}  // namespace noisyfb
