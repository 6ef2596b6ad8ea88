#include "noisyfb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "noisyfb/error.hpp"
#include "noisyfb/format.hpp"

namespace noisyfb {

namespace {

using RawMap = std::map<std::string, std::string, std::less<>>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

// Drops a '#' comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

bool is_known_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

RawMap read_assignments(std::string_view text) {
  RawMap raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!is_known_key(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (raw.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    raw[key] = unquote(trim(line.substr(eq + 1)));
  }
  return raw;
}

class Values {
 public:
  explicit Values(RawMap raw) : raw_(std::move(raw)) {}

  bool has(std::string_view key) const { return raw_.contains(key); }

  std::string text(std::string_view key, std::string fallback) const {
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }

  std::string required_text(std::string_view key) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) throw ConfigError(std::string(key) + ": required key is missing");
    return it->second;
  }

  double real(std::string_view key) const { return parse_real(key, required_text(key)); }
  std::optional<double> optional_real(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return real(key);
  }

  std::uint64_t integer(std::string_view key) const {
    return parse_integer(key, required_text(key));
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = required_text(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(std::string(key) + ": expected true or false, got '" + v + "'");
  }

  static double parse_real(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      throw ConfigError(std::string(key) + ": expected a real number, got '" + std::string(v) +
                        "'");
    }
    return out;
  }

  // Accepts integer literals and integral reals such as 1e6.
  static std::uint64_t parse_integer(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec == std::errc{} && ptr == v.data() + v.size()) return out;
    double real = 0.0;
    const auto [rptr, rec] = std::from_chars(v.data(), v.data() + v.size(), real);
    if (rec == std::errc{} && rptr == v.data() + v.size() && real >= 0.0 && real < 1.8e19 &&
        std::floor(real) == real) {
      return static_cast<std::uint64_t>(real);
    }
    throw ConfigError(std::string(key) + ": expected a nonnegative integer, got '" +
                      std::string(v) + "'");
  }

 private:
  RawMap raw_;
};

Setting parse_setting(const Values& values) {
  const std::string name = values.required_text("setting");
  Setting s;
  if (name == "full-const") {
    s.model = FeedbackModel::full_constant;
  } else if (name == "full-var") {
    s.model = FeedbackModel::full_variable;
  } else if (name == "bandit-const") {
    s.model = FeedbackModel::bandit_constant;
  } else if (name == "bandit-var") {
    s.model = FeedbackModel::bandit_variable;
  } else {
    throw ConfigError("setting: expected full-const, full-var, bandit-const or bandit-var, got '" +
                      name + "'");
  }
  s.noise_known = values.boolean("noise_known", true);
  return s;
}

NoiseModel parse_noise(const Values& values, const Setting& setting) {
  if (setting.constant_noise()) {
    if (values.has("noise")) throw ConfigError("noise: constant settings take eps instead");
    const double eps = values.real("eps");
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw ConfigError("eps: must lie in (0, 1], got " + format_double(eps));
    }
    return NoiseModel::constant(eps);
  }
  if (values.has("eps")) throw ConfigError("eps: variable settings take noise instead");
  const std::string name = values.text("noise", "shared-uniform");
  if (name == "shared-uniform") return NoiseModel::shared_uniform();
  if (name == "uniform") return NoiseModel::iid(Uniform01{});
  if (name == "truncexp") {
    const double lambda = values.real("lambda");
    if (!(lambda > 0.0)) throw ConfigError("lambda: must be positive");
    return NoiseModel::iid(TruncExp{lambda});
  }
  if (name == "power") {
    const double alpha = values.real("alpha");
    if (!(alpha > 0.0)) throw ConfigError("alpha: must be positive");
    return NoiseModel::iid(PowerCdf{alpha});
  }
  throw ConfigError("noise: expected uniform, shared-uniform, truncexp or power, got '" + name +
                    "'");
}

std::string default_learner_name(const Setting& s) {
  switch (s.model) {
    case FeedbackModel::full_constant:
      return s.noise_known ? "ews-unbiased" : "ews-raw";
    case FeedbackModel::bandit_constant:
      return "ews-bandit";
    case FeedbackModel::full_variable:
      if (s.noise_known) return "ew-threshold";
      break;
    case FeedbackModel::bandit_variable:
      if (s.noise_known) return "exp3-threshold";
      break;
  }
  throw ConfigError("learner: required for setting " + describe(s) +
                    " (no algorithm attains sublinear regret there)");
}

struct Rates {
  std::optional<double> eta;
  std::optional<double> theta;
  std::string eta_source;
  std::string theta_source;
};

double constant_eps(const NoiseModel& noise) {
  return std::get<ConstantNoise>(noise.variant()).eps;
}

Rates default_rates(const Setting& s, const NoiseModel& noise, std::size_t T, std::size_t K,
                    bool threshold) {
  Rates r;
  switch (s.model) {
    case FeedbackModel::full_constant:
      r.eta = default_eta(s, constant_eps(noise), T, K);
      r.eta_source = "eps*sqrt(lnK/T)";
      return r;
    case FeedbackModel::bandit_constant:
      r.eta = default_eta(s, constant_eps(noise), T, K);
      r.eta_source = "eps*sqrt(lnK/(T*K))";
      return r;
    case FeedbackModel::full_variable:
    case FeedbackModel::bandit_variable:
      break;
  }
  const bool bandit = s.model == FeedbackModel::bandit_variable;
  if (threshold) {
    r.theta = default_theta(s, T, K);
    r.theta_source = bandit ? "(K*lnK/T)^(1/3)" : "(lnK/T)^(1/3)";
  }
  const auto marginal = noise.marginal();
  const bool uniform = !marginal || std::holds_alternative<Uniform01>(*marginal);
  if (uniform || bandit || !threshold) {
    r.eta = default_eta(s, 0.0, T, K);
    r.eta_source = bandit ? "lnK^(2/3)/(K^(1/3)*T^(2/3))" : "(lnK/T)^(2/3)";
  } else {
    r.eta = general_eta(second_moment_weight(*marginal, *r.theta), T, K);
    r.eta_source = "sqrt(lnK/(T*g(theta)))";
  }
  return r;
}

LossMatrix parse_loss_pattern(const std::string& pattern, std::size_t K) {
  std::vector<std::vector<int>> rows;
  std::vector<int> row;
  const auto flush = [&] {
    if (row.empty()) return;
    if (row.size() != K) {
      throw ConfigError("loss_pattern: row " + std::to_string(rows.size() + 1) + " has " +
                        std::to_string(row.size()) + " entries, expected K = " +
                        std::to_string(K));
    }
    rows.push_back(row);
    row.clear();
  };
  for (const char c : pattern) {
    if (c == '0' || c == '1') {
      row.push_back(c - '0');
    } else if (c == ';') {
      flush();
    } else if (c != ' ' && c != ',') {
      throw ConfigError(std::string("loss_pattern: unexpected character '") + c + "'");
    }
  }
  flush();
  if (rows.empty()) throw ConfigError("loss_pattern: no rows");
  return LossMatrix::from_rows(rows);
}

AdversaryKind parse_adversary(const Values& values, const Setting& s, const NoiseModel& noise,
                              std::size_t T, std::size_t K, double gamma) {
  std::string name = values.has("adversary") ? values.required_text("adversary") : "";
  if (name.empty()) {
    switch (s.model) {
      case FeedbackModel::full_constant: name = "stochastic-gap"; break;
      case FeedbackModel::bandit_constant: name = "bandit-gap"; break;
      case FeedbackModel::full_variable:
        name = s.noise_known ? "variable-noise" : "unknown-noise-indist";
        break;
      case FeedbackModel::bandit_variable:
        name = s.noise_known ? "bandit-variable-noise" : "unknown-noise-indist";
        break;
    }
  }
  const auto eps_for = [&](std::string_view key) {
    if (!noise.is_constant()) {
      throw ConfigError(std::string(key) + ": default needs constant noise; set it explicitly");
    }
    return constant_eps(noise);
  };
  if (name == "zero") return FixedSequence{LossMatrix(1, K)};
  if (name == "fixed") return FixedSequence{parse_loss_pattern(values.required_text("loss_pattern"), K)};
  if (name == "stochastic-gap") {
    const auto delta = values.optional_real("delta");
    return StochasticGap{delta ? *delta : gap_delta(eps_for("delta"), T, K)};
  }
  if (name == "variable-noise") {
    const auto theta = values.optional_real("adv_theta");
    const auto gap = values.optional_real("gap");
    return VariableNoiseFullInfo{theta ? *theta : variable_noise_theta(T, K),
                                 gap ? *gap : 1.0 / 6.0};
  }
  if (name == "unknown-noise-indist") return UnknownNoiseIndist{};
  if (name == "bandit-gap") {
    const auto beta = values.optional_real("beta");
    return BanditGap{beta ? *beta : bandit_gap_beta(eps_for("beta"), T, K, gamma)};
  }
  if (name == "bandit-variable-noise") {
    const auto theta = values.optional_real("adv_theta");
    const double adv_theta = theta ? *theta : bandit_variable_noise_theta(T, K);
    if (values.text("beta", "") == "reduced") {
      return BanditVariableNoise{adv_theta,
                                 bandit_variable_noise_reduced_beta(adv_theta, T, K, gamma)};
    }
    const auto beta = values.optional_real("beta");
    return BanditVariableNoise{adv_theta, beta ? *beta : bandit_variable_noise_beta(T, K, gamma)};
  }
  throw ConfigError("adversary: unknown adversary '" + name + "'");
}

std::vector<std::uint64_t> parse_seeds(const Values& values) {
  if (!values.has("seeds")) return {0};
  const std::string v = values.required_text("seeds");
  std::vector<std::uint64_t> seeds;
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("seeds: unterminated list");
    std::stringstream items(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto t = trim(item);
      if (t.empty()) continue;
      seeds.push_back(Values::parse_integer("seeds", t));
    }
  } else {
    const std::uint64_t count = Values::parse_integer("seeds", v);
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(i);
  }
  if (seeds.empty()) throw ConfigError("seeds: at least one seed required");
  return seeds;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "setting", "noise_known", "K",     "T",         "eps",          "noise",
      "lambda",  "alpha",       "learner", "eta",     "theta",        "adversary",
      "delta",   "beta",        "gap",   "adv_theta", "loss_pattern", "seeds",
      "root_seed", "gamma",     "adversary_sees_noise", "hypothesis_policy"};
  return keys;
}

Overrides parse_overrides(const std::vector<std::string>& items) {
  Overrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + item + "': expected key=value");
    }
    out.emplace_back(std::string(trim(std::string_view(item).substr(0, eq))),
                     unquote(trim(std::string_view(item).substr(eq + 1))));
  }
  return out;
}

ExperimentConfig parse_config_text(std::string_view text, const Overrides& overrides) {
  RawMap raw = read_assignments(text);
  for (const auto& [key, value] : overrides) {
    if (!is_known_key(key)) throw ConfigError("override: unknown key '" + key + "'");
    raw[key] = value;
  }
  const Values values(std::move(raw));

  ExperimentConfig config;
  config.setting = parse_setting(values);
  config.actions = values.integer("K");
  config.horizon = values.integer("T");
  if (config.actions < 2) throw ConfigError("K: must be at least 2");
  if (config.horizon < 2) throw ConfigError("T: must be at least 2");
  config.noise = parse_noise(values, config.setting);
  config.gamma = values.has("gamma") ? values.real("gamma") : 1.0;
  if (!(config.gamma > 0.0)) throw ConfigError("gamma: must be positive");
  config.seeds = parse_seeds(values);
  config.root_seed = values.has("root_seed") ? values.integer("root_seed") : 0;
  config.adversary_sees_noise = values.boolean("adversary_sees_noise", true);
  const std::string policy = values.text("hypothesis_policy", "count");
  if (policy == "count") {
    config.hypothesis_policy = HypothesisPolicy::count;
  } else if (policy == "enforce") {
    config.hypothesis_policy = HypothesisPolicy::enforce;
  } else {
    throw ConfigError("hypothesis_policy: expected count or enforce, got '" + policy + "'");
  }

  const Setting& s = config.setting;
  const std::size_t T = config.horizon;
  const std::size_t K = config.actions;
  const std::string learner =
      values.has("learner") ? values.required_text("learner") : default_learner_name(s);
  const bool threshold = learner == "ew-threshold" || learner == "exp3-threshold";
  const bool ews = learner != "follow-noisy-leader" && learner != "uniform";

  if (threshold && !s.noise_known) {
    throw ConfigError("learner: " + learner +
                      " needs the realized noise; with unknown noise no learner achieves "
                      "sublinear regret");
  }
  if (!threshold && values.has("theta")) {
    throw ConfigError("theta: only threshold learners take a threshold");
  }
  if (!ews && values.has("eta")) throw ConfigError("eta: " + learner + " has no learning rate");

  Rates rates;
  if (ews && !(values.has("eta") && (!threshold || values.has("theta")))) {
    rates = default_rates(s, config.noise, T, K, threshold);
  }
  if (values.has("eta")) {
    rates.eta = values.real("eta");
    rates.eta_source = "config";
  }
  if (values.has("theta")) {
    rates.theta = values.real("theta");
    rates.theta_source = "config";
  }
  if (rates.eta && !(*rates.eta > 0.0)) {
    throw ConfigError("eta: must be positive, got " + format_double(*rates.eta));
  }
  if (rates.theta && !(*rates.theta > 0.0 && *rates.theta < 1.0)) {
    throw ConfigError("theta: must lie in (0, 1), got " + format_double(*rates.theta));
  }

  if (learner == "ews-unbiased") {
    if (!s.constant_noise()) throw ConfigError("learner: ews-unbiased needs constant noise");
    const double p = (1.0 - constant_eps(config.noise)) / 2.0;
    config.learner = Ews{UnbiasedConstant{p}, *rates.eta};
  } else if (learner == "ews-raw") {
    config.learner = Ews{Raw{}, *rates.eta};
  } else if (learner == "ew-threshold") {
    config.learner = Ews{ThresholdFull{*rates.theta}, *rates.eta};
  } else if (learner == "ews-bandit") {
    config.learner = Ews{BanditImportance{}, *rates.eta};
  } else if (learner == "exp3-threshold") {
    config.learner = Ews{Exp3Threshold{*rates.theta}, *rates.eta};
  } else if (learner == "follow-noisy-leader") {
    config.learner = FollowNoisyLeader{};
  } else if (learner == "uniform") {
    config.learner = UniformRandom{};
  } else {
    throw ConfigError("learner: unknown learner '" + learner + "'");
  }
  config.eta = rates.eta;
  config.theta = rates.theta;
  config.eta_source = rates.eta_source;
  config.theta_source = rates.theta_source;

  config.adversary = parse_adversary(values, s, config.noise, T, K, config.gamma);
  validate(config);
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), overrides);
}

}  // namespace noisyfb
