#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noisyfb/harness.hpp"

namespace noisyfb {

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Splits "key=value" strings. Throws ConfigError on a missing '='.
Overrides parse_overrides(const std::vector<std::string>& items);

// Flat key = value format (a TOML subset): one assignment per line, '#' comments, values are
// integers, reals, true/false, quoted or bare strings, or [a, b, ...] integer lists.
// Overrides replace file values. Missing values are defaulted from the setting's tuned rates.
// Throws ConfigError naming the key and the violated constraint.
ExperimentConfig parse_config_text(std::string_view text, const Overrides& overrides = {});
ExperimentConfig parse_config(const std::filesystem::path& path, const Overrides& overrides = {});

// Keys accepted by the parser.
const std::vector<std::string>& config_keys();

}  // namespace noisyfb
