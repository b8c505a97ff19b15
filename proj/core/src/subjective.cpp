#include "pi/subjective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pi/csv.hpp"

namespace pi::detail {
extern const char* const builtin_table3_csv;
extern const char* const builtin_table5_csv;
}  // namespace pi::detail

namespace pi {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("input lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw std::domain_error("correlation needs at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw std::domain_error("correlation undefined for a constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Ties share the average of the 1-based ranks they span.
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("input lengths differ");
  const std::vector<double> rx = fractional_ranks(x);
  const std::vector<double> ry = fractional_ranks(y);
  return pearson(rx, ry);
}

std::vector<CorrelationRow> correlation_table(const SubjectiveDataset& dataset) {
  std::vector<std::string> order;
  for (const SubjectiveRecord& rec : dataset.records) {
    if (std::find(order.begin(), order.end(), rec.content) == order.end()) {
      order.push_back(rec.content);
    }
  }
  std::vector<CorrelationRow> rows;
  rows.reserve(order.size());
  for (const std::string& content : order) {
    std::vector<double> freq, dur, intensity, mos;
    for (const SubjectiveRecord& rec : dataset.records) {
      if (rec.content != content) continue;
      freq.push_back(rec.pause_frequency_hz);
      dur.push_back(rec.avg_pause_duration_s);
      intensity.push_back(rec.pi);
      mos.push_back(rec.mos);
    }
    if (mos.size() < 3) {
      throw std::domain_error("content group '" + content + "' has fewer than 3 records");
    }
    CorrelationRow row;
    row.content = content;
    row.r_frequency = pearson(freq, mos);
    row.r_duration = pearson(dur, mos);
    row.r_pi = pearson(intensity, mos);
    rows.push_back(std::move(row));
  }
  return rows;
}

SubjectiveDataset parse_dataset(std::istream& in, const std::string& source) {
  const std::vector<csv::Row> rows = csv::read_table(
      in, source, {"video_id", "content", "pi", "pause_frequency", "avg_pause_duration", "mos"});
  SubjectiveDataset dataset;
  dataset.source = source;
  std::set<long> seen_ids;
  for (const csv::Row& row : rows) {
    SubjectiveRecord rec;
    rec.video_id = csv::parse_long(row.fields[0], source, row.line);
    rec.content = row.fields[1];
    rec.pi = csv::parse_double(row.fields[2], source, row.line);
    rec.pause_frequency_hz = csv::parse_double(row.fields[3], source, row.line);
    rec.avg_pause_duration_s = csv::parse_double(row.fields[4], source, row.line);
    rec.mos = csv::parse_double(row.fields[5], source, row.line);
    if (rec.content.empty()) throw csv::ParseError(source, row.line, "empty content label");
    if (!(rec.pi >= 0.0 && rec.pi < 1.0)) {
      throw csv::ParseError(source, row.line, "pi must lie in [0, 1)");
    }
    if (!(rec.pause_frequency_hz >= 0.0) || !(rec.avg_pause_duration_s >= 0.0)) {
      throw csv::ParseError(source, row.line, "frequency and duration must be nonnegative");
    }
    if (!(rec.mos >= 1.0 && rec.mos <= 5.0)) {
      throw csv::ParseError(source, row.line, "mos must lie in [1, 5]");
    }
    if (std::abs(rec.pi - rec.pause_frequency_hz * rec.avg_pause_duration_s) >
        kRecordConsistencyTol) {
      throw csv::ParseError(source, row.line,
                            "pi is inconsistent with pause_frequency * avg_pause_duration");
    }
    if (!seen_ids.insert(rec.video_id).second) {
      throw csv::ParseError(source, row.line,
                            "duplicate video_id " + std::to_string(rec.video_id));
    }
    dataset.records.push_back(std::move(rec));
  }
  if (dataset.records.empty()) {
    throw csv::ParseError(source, 1, "dataset has no records");
  }
  return dataset;
}

SubjectiveDataset load_dataset(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_dataset(file, path);
}

SubjectiveDataset load_builtin_dataset(const std::string& name) {
  const char* text = nullptr;
  std::string source;
  if (name == "table3") {
    text = detail::builtin_table3_csv;
    source = "builtin-table-3";
  } else if (name == "table5") {
    text = detail::builtin_table5_csv;
    source = "builtin-table-5";
  } else {
    throw std::invalid_argument("unknown builtin dataset '" + name +
                                "' (expected table3 or table5)");
  }
  std::istringstream stream(text);
  SubjectiveDataset dataset = parse_dataset(stream, source);
  dataset.source = source;
  return dataset;
}

SubjectiveDataset merge(const std::vector<SubjectiveDataset>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  SubjectiveDataset out;
  for (const SubjectiveDataset& part : parts) {
    if (!out.source.empty()) out.source += "+";
    out.source += part.source;
    out.records.insert(out.records.end(), part.records.begin(), part.records.end());
  }
  return out;
}

}  // namespace pi
