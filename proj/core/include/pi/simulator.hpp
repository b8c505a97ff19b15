#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pi/density.hpp"
#include "pi/pause_statistics.hpp"
#include "pi/tcp_model.hpp"
#include "pi/trace.hpp"
#include "pi/trace_metrics.hpp"

namespace pi {

enum class SimMode {
  deterministic,  // constant throughput from the fixed loss rate
  stochastic,     // per-segment throughput jittered around that rate
};

struct SimConfig {
  TcpParams tcp;
  LinkConstraints caps;
  BufferThresholds buffer;
  double playout_rate_Bps = 100000.0;
  double step_s = 0.1;               // segment length for throughput draws
  double session_length_s = 10000.0;
  SimMode mode = SimMode::deterministic;
  double loss_rate = 0.02;
  // Stochastic mode: per-segment loss ~ jitter Gamma rescaled so its mean is
  // loss_rate, truncated to the valid range.
  GammaParams loss_jitter;
  std::uint64_t seed = 1;
  bool record_occupancy = false;

  void validate() const;  // throws std::invalid_argument
};

struct SimResult {
  EmpiricalMetrics metrics;
  double total_inflow_bytes = 0.0;
  double total_outflow_bytes = 0.0;
  double final_occupancy_bytes = 0.0;
  std::size_t pause_events = 0;  // pause_start events emitted (incl. trailing)
};

// Fluid playout-buffer session: per segment the download rate is fixed; state
// transitions (reach high watermark while filling, hit low watermark while
// playing) happen at exact crossing times within segments. Playback begins
// once the buffer first reaches the high watermark; that initial fill is the
// trace's first play_start.
std::pair<SessionTrace, SimResult> run_session(const SimConfig& cfg);

// A copy of `base` rescaled so the rescaled mean equals `nominal`: used to
// jitter per-segment loss around a sweep point without shifting its mean.
GammaParams jitter_matched_to(const GammaParams& base, double nominal);

struct SweepRow {
  double loss = 0.0;
  double model_pi = 0.0;
  double model_freq_hz = 0.0;
  double model_duration_s = 0.0;
  double sim_pi_mean = 0.0;
  double sim_pi_std = 0.0;
  double sim_freq_mean = 0.0;
  double sim_freq_std = 0.0;
  double sim_dur_mean = 0.0;
  double sim_dur_std = 0.0;
};

// Runs `runs_per_point` sessions (cfg.mode) per grid loss rate, run i seeded
// with cfg.seed + i, and pairs the empirical statistics with the closed-form
// model values.
std::vector<SweepRow> sweep_loss(const SimConfig& cfg, const std::vector<double>& loss_grid,
                                 int runs_per_point);

// Ideal periodic trace with the given pause frequency and duration. Throws
// std::invalid_argument when frequency * duration >= 1 or the session is too
// short for one full cycle.
SessionTrace synthesize_trace(double pause_frequency_hz, double pause_duration_s,
                              double session_length_s);

}  // namespace pi
