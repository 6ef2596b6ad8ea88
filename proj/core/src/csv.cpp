#include "noisyfb/csv.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "noisyfb/error.hpp"

namespace noisyfb {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// Quotes a text field only when it holds a delimiter.
std::string text_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

CsvRow make_row(const ExperimentConfig& config, const RegretSummary& summary) {
  CsvRow row;
  row.setting = describe(config.setting);
  row.learner = learner_label(config);
  row.adversary = adversary_label(config);
  row.actions = config.actions;
  row.horizon = config.horizon;
  row.eps_or_dist = noise_label(config);
  row.eta = config.eta;
  row.theta = config.theta;
  row.seed_count = config.seeds.size();
  row.mean_regret = summary.mean_regret;
  row.std_error = summary.std_error;
  row.theoretical_bound = summary.theoretical_bound;
  return row;
}

void write_csv(std::ostream& out, std::vector<CsvRow> rows) {
  if (rows.empty()) throw std::invalid_argument("write_csv: no rows to write");
  std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::tie(a.horizon, a.actions, a.learner) < std::tie(b.horizon, b.actions, b.learner);
  });
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << text_cell(r.setting) << ',' << text_cell(r.learner) << ',' << text_cell(r.adversary)
        << ',' << r.actions << ',' << r.horizon << ',' << text_cell(r.eps_or_dist) << ','
        << cell(r.eta) << ',' << cell(r.theta) << ',' << r.seed_count << ','
        << format_double(r.mean_regret) << ',' << format_double(r.std_error) << ','
        << cell(r.theoretical_bound) << ',' << cell(r.fitted_exponent) << '\n';
  }
}

void emit_csv(std::vector<CsvRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(out, std::move(rows));
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace noisyfb
