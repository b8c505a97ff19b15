#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace pi {

struct SubjectiveRecord {
  long video_id = 0;
  std::string content;
  double pi = 0.0;                  // pause intensity in [0, 1)
  double pause_frequency_hz = 0.0;
  double avg_pause_duration_s = 0.0;
  double mos = 0.0;                 // mean opinion score in [1, 5]
};

struct SubjectiveDataset {
  std::string source;
  std::vector<SubjectiveRecord> records;
};

// Published tables round pi/frequency/duration independently, so pi and
// frequency*duration can disagree by several hundredths.
inline constexpr double kRecordConsistencyTol = 0.07;

// Pearson correlation. Requires length >= 3 and non-constant inputs
// (std::domain_error otherwise).
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationRow {
  std::string content;
  double r_frequency = 0.0;
  double r_duration = 0.0;
  double r_pi = 0.0;
};

// Per-content-group Pearson correlations of MOS against pause frequency,
// pause duration, and pause intensity. Groups appear in first-appearance
// order; a group with fewer than 3 records raises std::domain_error naming
// it.
std::vector<CorrelationRow> correlation_table(const SubjectiveDataset& dataset);

// Parses the `video_id,content,pi,pause_frequency,avg_pause_duration,mos`
// schema, validating ranges, pi vs frequency*duration consistency, and
// video_id uniqueness. Failures raise csv::ParseError with the line number.
SubjectiveDataset parse_dataset(std::istream& in, const std::string& source);
SubjectiveDataset load_dataset(const std::string& path);

// Bundled study data: "table3" (contents M, R1, N, C) or "table5" (R2).
SubjectiveDataset load_builtin_dataset(const std::string& name);

// Concatenates datasets; video ids are namespaced by source so they need not
// be globally unique.
SubjectiveDataset merge(const std::vector<SubjectiveDataset>& parts);

}  // namespace pi
