#include "pi/pause_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pi {

namespace {

// Log of the segment-count weight: the normal density (CLT over m i.i.d.
// segments) of the cumulative per-second sum sitting at `target` when the
// count is m. Kept in log space; the ratios span hundreds of orders of
// magnitude for narrow densities.
double log_weight(double m, double target, double mu, double sigma) {
  const double z = target - m * mu;
  return -(z * z) / (2.0 * m * sigma * sigma) - std::log(sigma) -
         0.5 * std::log(2.0 * std::numbers::pi * m);
}

DurationDistribution clt_distribution(double mu, double sigma, double area_bytes,
                                      const SegmentConfig& seg) {
  seg.validate();
  if (!(area_bytes > 0.0)) throw std::invalid_argument("fluctuation area must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("per-segment drift must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("throughput spread must be positive");

  const double target = area_bytes / seg.segment_length_s;  // per-second sum units
  const int max_m = seg.max_segments;
  // Keep evaluating past the cutoff so the discarded mass is measurable.
  const int extended = max_m > std::numeric_limits<int>::max() / 8 ? std::numeric_limits<int>::max()
                                                                   : max_m * 8;
  std::vector<double> lw;
  lw.reserve(static_cast<std::size_t>(max_m));
  double lw_max = -std::numeric_limits<double>::infinity();
  int argmax = 1;
  for (int m = 1; m <= extended; ++m) {
    const double v = log_weight(static_cast<double>(m), target, mu, sigma);
    lw.push_back(v);
    if (v > lw_max) {
      lw_max = v;
      argmax = m;
    }
    if (m > max_m && m > argmax && v < lw_max - 40.0) break;  // tail is dead
  }

  double head = 0.0, tail = 0.0;
  const std::size_t head_count = std::min(lw.size(), static_cast<std::size_t>(max_m));
  std::vector<double> weights(head_count);
  for (std::size_t i = 0; i < lw.size(); ++i) {
    const double w = std::exp(lw[i] - lw_max);
    if (i < head_count) {
      weights[i] = w;
      head += w;
    } else {
      tail += w;
    }
  }
  if (!(head > 0.0)) {
    throw std::invalid_argument("all probability mass lies beyond max_segments");
  }

  DurationDistribution out;
  out.segment_length_s = seg.segment_length_s;
  out.durations_s.resize(head_count);
  out.probabilities.resize(head_count);
  for (std::size_t i = 0; i < head_count; ++i) {
    out.durations_s[i] = static_cast<double>(i + 1) * seg.segment_length_s;
    out.probabilities[i] = weights[i] / head;
  }
  out.truncated = tail > 0.1 * (head + tail);
  return out;
}

}  // namespace

void SegmentConfig::validate() const {
  if (!(segment_length_s > 0.0) || !std::isfinite(segment_length_s)) {
    throw std::invalid_argument("segment_length_s must be positive and finite");
  }
  if (max_segments < 10) throw std::invalid_argument("max_segments must be >= 10");
}

void BufferThresholds::validate() const {
  if (!(q_min_bytes >= 0.0) || !std::isfinite(q_min_bytes)) {
    throw std::invalid_argument("q_min_bytes must be nonnegative and finite");
  }
  if (!(q_max_bytes > q_min_bytes) || !std::isfinite(q_max_bytes)) {
    throw std::invalid_argument("q_max_bytes must exceed q_min_bytes");
  }
}

double DurationDistribution::mean() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < durations_s.size(); ++i) {
    sum += durations_s[i] * probabilities[i];
  }
  return sum;
}

std::size_t DurationDistribution::mode_index() const {
  if (probabilities.empty()) return 0;
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

DurationDistribution pause_duration_distribution(const DensityCurve& th,
                                                 const BufferThresholds& buf,
                                                 const SegmentConfig& seg) {
  buf.validate();
  const Moments m = distribution_moments(th);
  if (!(m.mean > 0.0)) {
    throw std::invalid_argument("mean throughput must be positive: buffer would never refill");
  }
  return clt_distribution(m.mean, m.stddev, buf.fluctuation_area(), seg);
}

DurationDistribution play_duration_distribution(const DensityCurve& th,
                                                const BufferThresholds& buf,
                                                const SegmentConfig& seg,
                                                double playout_rate_Bps) {
  buf.validate();
  const Moments m = distribution_moments(th);
  if (!(playout_rate_Bps > m.mean)) {
    throw std::invalid_argument(
        "no-pause regime: playout rate must exceed the mean throughput");
  }
  return clt_distribution(playout_rate_Bps - m.mean, m.stddev, buf.fluctuation_area(), seg);
}

DurationDistribution first_passage_monte_carlo(const DensityCurve& th, double threshold_bytes,
                                               const SegmentConfig& seg,
                                               double drift_offset_Bps, std::size_t trials,
                                               std::uint64_t seed) {
  seg.validate();
  if (!(threshold_bytes > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (trials < 10000) throw std::invalid_argument("trials must be >= 10000");

  const DensitySampler sampler(th);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> counts;
  for (std::size_t t = 0; t < trials; ++t) {
    double acc = 0.0;
    std::size_t m = 0;
    while (true) {
      ++m;
      if (m > 10000000) {
        throw std::runtime_error("first-passage trial exceeded 10^7 segments");
      }
      acc += seg.segment_length_s * (sampler(rng) - drift_offset_Bps);
      if (std::abs(acc) >= threshold_bytes) break;
    }
    if (m > counts.size()) counts.resize(m, 0);
    ++counts[m - 1];
  }

  DurationDistribution out;
  out.segment_length_s = seg.segment_length_s;
  out.durations_s.resize(counts.size());
  out.probabilities.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.durations_s[i] = static_cast<double>(i + 1) * seg.segment_length_s;
    out.probabilities[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  }
  return out;
}

double total_variation(const DurationDistribution& a, const DurationDistribution& b) {
  const double scale = std::max(a.segment_length_s, b.segment_length_s);
  if (std::abs(a.segment_length_s - b.segment_length_s) > 1e-12 * scale) {
    throw std::invalid_argument("duration distributions use different segment lengths");
  }
  const std::size_t n = std::max(a.probabilities.size(), b.probabilities.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.probabilities.size() ? a.probabilities[i] : 0.0;
    const double pb = i < b.probabilities.size() ? b.probabilities[i] : 0.0;
    sum += std::abs(pa - pb);
  }
  return 0.5 * sum;
}

bool is_unimodal(const std::vector<double>& values) {
  if (values.empty()) return false;
  const std::size_t peak = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  const double tol = 1e-12 * values[peak];
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (i < peak && values[i + 1] < values[i] - tol) return false;
    if (i >= peak && values[i + 1] > values[i] + tol) return false;
  }
  return true;
}

}  // namespace pi
