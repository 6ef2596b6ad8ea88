// noisyfb: run, sweep and verify noisy-feedback online learning experiments.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "noisyfb/config.hpp"
#include "noisyfb/csv.hpp"
#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"
#include "noisyfb/harness.hpp"
#include "noisyfb/verify.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

using namespace noisyfb;

void write_rows(std::vector<CsvRow> rows, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, std::move(rows));
  } else {
    emit_csv(std::move(rows), out_path);
  }
}

void summarize(std::ostream& err, const ExperimentConfig& config, const RegretSummary& s) {
  err << describe(config.setting) << " " << learner_label(config) << " vs "
      << adversary_label(config) << " K=" << config.actions << " T=" << config.horizon
      << " seeds=" << config.seeds.size() << ": mean regret " << format_double(s.mean_regret)
      << " (stderr " << format_double(s.std_error) << ")";
  if (s.theoretical_bound) {
    err << ", bound " << format_double(*s.theoretical_bound) << " [" << s.bound_source << "]";
    if (!s.bound_hypothesis_met) err << " WARNING: bound hypothesis not met";
  }
  if (s.hypothesis_violations > 0) {
    err << ", update hypothesis violated in " << s.hypothesis_violations << " rounds";
  }
  err << '\n';
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets,
            const std::string& out_path) {
  const ExperimentConfig config = parse_config(config_path, parse_overrides(sets));
  const RegretSummary summary = replicate(config);
  summarize(std::cerr, config, summary);
  write_rows({make_row(config, summary)}, out_path);
  return EXIT_SUCCESS;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& sets,
              const std::string& grid, const std::string& out_path) {
  const auto eq = grid.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--grid: expected key=v1,v2,..., got '" + grid + "'");
  }
  const std::string key = grid.substr(0, eq);
  std::vector<std::string> values;
  std::stringstream items(grid.substr(eq + 1));
  for (std::string item; std::getline(items, item, ',');) {
    if (!item.empty()) values.push_back(item);
  }
  if (values.empty()) throw ConfigError("--grid: no values for " + key);

  std::vector<CsvRow> rows;
  std::vector<std::pair<double, double>> points;
  for (const auto& value : values) {
    Overrides overrides = parse_overrides(sets);
    overrides.emplace_back(key, value);
    const ExperimentConfig config = parse_config(config_path, overrides);
    const RegretSummary summary = replicate(config);
    summarize(std::cerr, config, summary);
    rows.push_back(make_row(config, summary));
    points.emplace_back(static_cast<double>(config.horizon), summary.mean_regret);
  }
  if (key == "T" && points.size() >= 4) {
    const ScalingFit fit = fit_scaling_exponent(points);
    if (fit.excluded > 0) {
      std::cerr << "warning: " << fit.excluded << " nonpositive regret values excluded from fit\n";
    }
    std::cerr << "fitted exponent " << format_double(fit.slope) << " (r2 "
              << format_double(fit.r2) << ")\n";
    for (auto& row : rows) row.fitted_exponent = fit.slope;
  }
  write_rows(std::move(rows), out_path);
  return EXIT_SUCCESS;
}

int cmd_verify(bool quick) {
  VerifyOptions options;
  if (quick) {
    options.inequality_fuzz_cases = 1'000;
    options.monte_carlo_episodes = 10'000;
    options.indistinguishability_samples = 100'000;
  }
  const VerifyReport report = verify_suite(options);
  print_report(std::cout, report);
  return report.all_passed() ? EXIT_SUCCESS : kExitCheckFailed;
}

int cmd_bounds(const std::string& config_path, const std::vector<std::string>& sets) {
  const ExperimentConfig config = parse_config(config_path, parse_overrides(sets));
  std::cout << "setting " << describe(config.setting) << " K=" << config.actions
            << " T=" << config.horizon << " noise " << noise_label(config) << '\n';
  if (config.eta) {
    std::cout << "eta " << format_double(*config.eta) << " [" << config.eta_source << "]\n";
  }
  if (config.theta) {
    std::cout << "theta " << format_double(*config.theta) << " [" << config.theta_source
              << "]\n";
  }
  const auto bound = bound_for(config);
  if (!bound) {
    std::cout << "bound none (no upper bound for this setting)\n";
    return EXIT_SUCCESS;
  }
  std::cout << "bound " << format_double(bound->value) << " [" << bound->source << "]";
  if (!bound->hypothesis_met) std::cout << " WARNING: hypothesis not met";
  std::cout << '\n';
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy-feedback online learning experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string grid;
  std::vector<std::string> sets;
  bool quick = false;

  auto* run = app.add_subcommand("run", "Run one configuration over all seeds and emit CSV");
  run->add_option("-c,--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_path, "Output CSV path (default stdout)");
  run->add_option("--set", sets, "Override a config value, key=value");

  auto* sweep = app.add_subcommand("sweep", "Run a configuration over a grid of one key");
  sweep->add_option("-c,--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--grid", grid, "key=v1,v2,...; a T grid also fits the regret exponent")
      ->required();
  sweep->add_option("-o,--out", out_path, "Output CSV path (default stdout)");
  sweep->add_option("--set", sets, "Override a config value, key=value");

  auto* verify = app.add_subcommand("verify", "Run the oracle check suite");
  verify->add_flag("--quick", quick, "Smaller sample sizes");

  auto* bounds = app.add_subcommand("bounds", "Print the tuned rates and the regret bound");
  bounds->add_option("-c,--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  bounds->add_option("--set", sets, "Override a config value, key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, sets, out_path);
    if (*sweep) return cmd_sweep(config_path, sets, grid, out_path);
    if (*verify) return cmd_verify(quick);
    if (*bounds) return cmd_bounds(config_path, sets);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitConfigError;
}
