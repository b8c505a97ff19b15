#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pi/density.hpp"

namespace pi {

// Discretization of a session into fixed-length download segments.
struct SegmentConfig {
  double segment_length_s = 0.1;
  int max_segments = 2000;

  void validate() const;  // throws std::invalid_argument
};

// Playout-buffer hysteresis thresholds in bytes: playback pauses when the
// buffer drains to q_min and resumes once it refills to q_max.
struct BufferThresholds {
  double q_min_bytes = 1500.0;
  double q_max_bytes = 200000.0;

  void validate() const;  // throws std::invalid_argument

  // Bytes the buffer gains per pause (and loses per play): q_max - q_min.
  double fluctuation_area() const { return q_max_bytes - q_min_bytes; }
};

// Distribution of a duration measured in whole segments.
struct DurationDistribution {
  double segment_length_s = 0.0;
  std::vector<double> durations_s;    // m * segment_length_s, m = 1..N
  std::vector<double> probabilities;  // sums to 1
  bool truncated = false;  // > 10% of the mass fell beyond max_segments

  double mean() const;
  std::size_t mode_index() const;
};

// Distribution of the pause duration: the number of segments until the
// cumulative download first covers the fluctuation area, via a central-limit
// normal for each segment count. Requires the throughput curve to have
// positive mean and spread.
DurationDistribution pause_duration_distribution(const DensityCurve& th,
                                                 const BufferThresholds& buf,
                                                 const SegmentConfig& seg);

// Distribution of the play duration: segments until the net drain at
// playout_rate_Bps against the refilling throughput covers the fluctuation
// area. Requires playout_rate_Bps > mean throughput (otherwise play never
// ends; throws std::invalid_argument "no-pause regime").
DurationDistribution play_duration_distribution(const DensityCurve& th,
                                                const BufferThresholds& buf,
                                                const SegmentConfig& seg,
                                                double playout_rate_Bps);

// Empirical first-passage pmf: each trial accumulates
// segment_length * (draw - drift_offset_Bps) per segment, with draws sampled
// from `th`, and records the first segment count where |accumulation| >=
// threshold_bytes. drift_offset 0 reproduces the pause case, the playout rate
// the play case. Requires trials >= 10000; a trial running past 10^7 segments
// aborts with std::runtime_error.
DurationDistribution first_passage_monte_carlo(const DensityCurve& th, double threshold_bytes,
                                               const SegmentConfig& seg,
                                               double drift_offset_Bps, std::size_t trials,
                                               std::uint64_t seed);

// Total variation distance between two duration pmfs on the same segment
// grid: 0.5 * sum |p_i - q_i| (the shorter support is padded with zeros).
double total_variation(const DurationDistribution& a, const DurationDistribution& b);

// True when values rise (non-strictly) to a single peak then fall.
bool is_unimodal(const std::vector<double>& values);

}  // namespace pi
