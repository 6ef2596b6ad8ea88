#include "noisyfb/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "noisyfb/error.hpp"

namespace noisyfb {

LossMatrix::LossMatrix(std::size_t horizon, std::size_t actions)
    : horizon_(horizon), actions_(actions), entries_(horizon * actions, 0) {}

LossMatrix LossMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw ConfigError("loss matrix: at least one row required");
  LossMatrix m(rows.size(), rows.front().size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != m.actions_) {
      throw ConfigError("loss matrix: row " + std::to_string(t) + " has " +
                        std::to_string(rows[t].size()) + " entries, expected " +
                        std::to_string(m.actions_));
    }
    for (std::size_t i = 0; i < m.actions_; ++i) {
      const int v = rows[t][i];
      if (v != 0 && v != 1) throw ConfigError("loss matrix: entries must be 0 or 1");
      m.set(t, i, v == 1);
    }
  }
  return m;
}

std::size_t LossMatrix::cumulative(std::size_t i) const {
  std::size_t sum = 0;
  for (std::size_t t = 0; t < horizon_; ++t) sum += at(t, i);
  return sum;
}

NoiseParamsRound NoiseParamsRound::from_eps(std::vector<double> eps) {
  NoiseParamsRound out;
  out.p.resize(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] >= 0.0 && eps[i] <= 1.0)) {
      throw DomainError("noise parameter eps must lie in [0, 1], got " + std::to_string(eps[i]));
    }
    out.p[i] = (1.0 - eps[i]) / 2.0;
  }
  out.eps = std::move(eps);
  return out;
}

NoiseParamsRound NoiseParamsRound::constant(double eps, std::size_t actions) {
  return from_eps(std::vector<double>(actions, eps));
}

std::size_t FeedbackVector::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

}  // namespace noisyfb
