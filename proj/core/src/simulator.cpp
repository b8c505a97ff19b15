#include "pi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pi/pi_model.hpp"

namespace pi {

void SimConfig::validate() const {
  tcp.validate();
  caps.validate();
  buffer.validate();
  if (!(playout_rate_Bps > 0.0)) {
    throw std::invalid_argument("playout_rate_Bps must be positive");
  }
  if (!(step_s > 0.0)) throw std::invalid_argument("step_s must be positive");
  if (!(session_length_s >= 100.0 * step_s)) {
    throw std::invalid_argument("session_length_s must cover at least 100 steps");
  }
  if (!(loss_rate > 0.0) || loss_rate > kLossValidityCap) {
    throw std::invalid_argument("loss_rate must lie in (0, 0.12]");
  }
  if (mode == SimMode::stochastic) loss_jitter.validate();
}

GammaParams jitter_matched_to(const GammaParams& base, double nominal) {
  base.validate();
  if (!(nominal > 0.0)) throw std::invalid_argument("nominal loss rate must be positive");
  GammaParams out = base;
  out.rescale_divisor = base.shape * base.scale / nominal;
  return out;
}

std::pair<SessionTrace, SimResult> run_session(const SimConfig& cfg) {
  cfg.validate();

  std::mt19937_64 rng(cfg.seed);
  const GammaParams jitter = cfg.mode == SimMode::stochastic
                                 ? jitter_matched_to(cfg.loss_jitter, cfg.loss_rate)
                                 : GammaParams{};
  const double fixed_rate = effective_throughput(cfg.loss_rate, cfg.tcp, cfg.caps);
  const double q_min = cfg.buffer.q_min_bytes;
  const double q_max = cfg.buffer.q_max_bytes;
  const double lambda = cfg.playout_rate_Bps;

  SessionTrace trace;
  SimResult result;

  enum class State { refilling, playing };
  State state = State::refilling;  // initial fill; its play_start opens the trace
  double q = 0.0;
  double inflow = 0.0;
  double outflow = 0.0;

  const auto steps = static_cast<std::size_t>(cfg.session_length_s / cfg.step_s + 1e-9);
  for (std::size_t i = 0; i < steps; ++i) {
    const double eta = cfg.mode == SimMode::deterministic
                           ? fixed_rate
                           : effective_throughput(sample_loss_rate(jitter, rng), cfg.tcp,
                                                  cfg.caps);
    const double t0 = static_cast<double>(i) * cfg.step_s;
    double remaining = cfg.step_s;
    // Rates are constant within a segment, so threshold crossings are exact.
    while (remaining > 0.0) {
      if (state == State::refilling) {
        const double needed = q_max - q;
        const double to_cross = std::max(0.0, needed / eta);
        if (to_cross <= remaining) {
          inflow += needed;
          q = q_max;
          remaining -= to_cross;
          trace.events.push_back(
              TraceEvent{t0 + (cfg.step_s - remaining), EventKind::play_start});
          state = State::playing;
        } else {
          inflow += eta * remaining;
          q += eta * remaining;
          remaining = 0.0;
        }
      } else if (eta < lambda) {  // playing, draining
        const double drain = lambda - eta;
        const double to_cross = std::max(0.0, (q - q_min) / drain);
        if (to_cross <= remaining) {
          inflow += eta * to_cross;
          outflow += lambda * to_cross;
          q = q_min;
          remaining -= to_cross;
          trace.events.push_back(
              TraceEvent{t0 + (cfg.step_s - remaining), EventKind::pause_start});
          state = State::refilling;
          ++result.pause_events;
        } else {
          inflow += eta * remaining;
          outflow += lambda * remaining;
          q -= drain * remaining;
          remaining = 0.0;
        }
      } else {  // playing, surplus: fill to the cap, then flow-control inflow
        const double net = eta - lambda;
        double rise = 0.0;
        if (net > 0.0 && q < q_max) {
          rise = std::min(remaining, (q_max - q) / net);
          inflow += eta * rise;
          outflow += lambda * rise;
          q = rise < remaining ? q_max : q + net * rise;
        }
        const double rest = remaining - rise;
        if (rest > 0.0) {
          inflow += lambda * rest;
          outflow += lambda * rest;
        }
        remaining = 0.0;
      }
    }
    if (cfg.record_occupancy) {
      trace.occupancy.push_back(OccupancySample{static_cast<double>(i + 1) * cfg.step_s, q});
    }
  }

  result.metrics = compute_metrics(trace);
  result.total_inflow_bytes = inflow;
  result.total_outflow_bytes = outflow;
  result.final_occupancy_bytes = q;
  return {std::move(trace), result};
}

namespace {

struct RunningStats {
  std::vector<double> values;

  void add(double v) { values.push_back(v); }

  double mean() const {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }

  double stddev() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
};

}  // namespace

std::vector<SweepRow> sweep_loss(const SimConfig& cfg, const std::vector<double>& loss_grid,
                                 int runs_per_point) {
  cfg.validate();
  if (runs_per_point < 1) throw std::invalid_argument("runs_per_point must be >= 1");
  if (loss_grid.empty()) throw std::invalid_argument("loss grid is empty");
  for (double p : loss_grid) {
    if (!(p > 0.0) || p > kLossValidityCap) {
      throw std::invalid_argument("loss grid values must lie in (0, 0.12]");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(loss_grid.size());
  for (double p : loss_grid) {
    SweepRow row;
    row.loss = p;
    const double eta = effective_throughput(p, cfg.tcp, cfg.caps);
    const PauseMetrics model =
        pause_play_metrics(eta, cfg.playout_rate_Bps, cfg.buffer.fluctuation_area());
    row.model_pi = model.pause_intensity;
    row.model_freq_hz = model.pause_frequency_hz;
    row.model_duration_s = model.avg_pause_duration_s;

    RunningStats pi_stats, freq_stats, dur_stats;
    for (int r = 0; r < runs_per_point; ++r) {
      SimConfig run_cfg = cfg;
      run_cfg.loss_rate = p;
      run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
      const auto [trace, res] = run_session(run_cfg);
      pi_stats.add(res.metrics.pause_intensity);
      freq_stats.add(res.metrics.pause_frequency_hz);
      if (res.metrics.pause_count > 0) dur_stats.add(res.metrics.mean_pause_duration_s);
    }
    row.sim_pi_mean = pi_stats.mean();
    row.sim_pi_std = pi_stats.stddev();
    row.sim_freq_mean = freq_stats.mean();
    row.sim_freq_std = freq_stats.stddev();
    row.sim_dur_mean = dur_stats.mean();
    row.sim_dur_std = dur_stats.stddev();
    rows.push_back(row);
  }
  return rows;
}

SessionTrace synthesize_trace(double pause_frequency_hz, double pause_duration_s,
                              double session_length_s) {
  if (!(pause_frequency_hz > 0.0) || !(pause_duration_s > 0.0)) {
    throw std::invalid_argument("frequency and duration must be positive");
  }
  if (!(pause_frequency_hz * pause_duration_s < 1.0)) {
    throw std::invalid_argument("frequency * duration must be < 1");
  }
  const double period = 1.0 / pause_frequency_hz;
  const auto cycles = static_cast<long long>(session_length_s / period + 1e-12);
  if (cycles < 1) {
    throw std::invalid_argument("session too short for one full pause/play cycle");
  }

  SessionTrace trace;
  trace.events.reserve(static_cast<std::size_t>(2 * cycles + 1));
  trace.events.push_back(TraceEvent{0.0, EventKind::play_start});
  for (long long k = 1; k <= cycles; ++k) {
    const double resume = static_cast<double>(k) * period;
    trace.events.push_back(TraceEvent{resume - pause_duration_s, EventKind::pause_start});
    trace.events.push_back(TraceEvent{resume, EventKind::play_start});
  }
  return trace;
}

}  // namespace pi
