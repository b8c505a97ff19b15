#include "pi/pi_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pi {

PauseMetrics pause_play_metrics(double eta_Bps, double lambda_Bps, double q0_bytes) {
  if (!(eta_Bps > 0.0)) throw std::domain_error("throughput must be positive");
  if (!(lambda_Bps > 0.0)) throw std::domain_error("playout rate must be positive");
  if (!(q0_bytes > 0.0)) throw std::domain_error("fluctuation area must be positive");

  PauseMetrics m;
  if (eta_Bps >= lambda_Bps) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    m.no_pause = true;
    m.avg_pause_duration_s = nan;
    m.avg_play_duration_s = nan;
    m.period_s = std::numeric_limits<double>::infinity();
    m.pause_frequency_hz = 0.0;
    m.pause_intensity = 0.0;
    m.period_sensitivity = nan;
    return m;
  }
  m.avg_pause_duration_s = q0_bytes / eta_Bps;
  m.avg_play_duration_s = q0_bytes / (lambda_Bps - eta_Bps);
  m.period_s = q0_bytes * lambda_Bps / (eta_Bps * (lambda_Bps - eta_Bps));
  m.pause_frequency_hz = eta_Bps * (lambda_Bps - eta_Bps) / (q0_bytes * lambda_Bps);
  m.pause_intensity = 1.0 - eta_Bps / lambda_Bps;
  m.period_sensitivity = period_sensitivity(eta_Bps, lambda_Bps, q0_bytes);
  return m;
}

double pause_intensity(double eta_Bps, double lambda_Bps) {
  if (!(eta_Bps >= 0.0)) throw std::domain_error("throughput must be nonnegative");
  if (!(lambda_Bps > 0.0)) throw std::domain_error("playout rate must be positive");
  return std::max(0.0, 1.0 - eta_Bps / lambda_Bps);
}

double period_sensitivity(double eta_Bps, double lambda_Bps, double q0_bytes) {
  if (!(q0_bytes > 0.0)) throw std::domain_error("fluctuation area must be positive");
  if (!(eta_Bps > 0.0) || !(eta_Bps < lambda_Bps)) {
    throw std::domain_error("throughput must lie in (0, playout rate)");
  }
  const double denom = eta_Bps * (lambda_Bps - eta_Bps);
  return q0_bytes * (-(lambda_Bps * (lambda_Bps - 2.0 * eta_Bps))) / (denom * denom);
}

std::string region_label(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
  }
  return "?";
}

CriticalPoints critical_points(const TcpParams& params, const LinkConstraints& caps,
                               double lambda_Bps) {
  params.validate();
  caps.validate();
  if (!(lambda_Bps > 0.0)) throw std::domain_error("playout rate must be positive");

  CriticalPoints cp;
  cp.capped_max_throughput_Bps = std::min({reno_throughput_timeout(kLossFloor, params),
                                           caps.bottleneck_Bps, caps.window_cap_Bps(params)});
  if (lambda_Bps > cp.capped_max_throughput_Bps) {
    cp.always_pause = true;
    cp.loss_at_lambda = 0.0;
  } else {
    cp.loss_at_lambda = invert_throughput(lambda_Bps, params);
  }
  const double half = 0.5 * lambda_Bps;
  if (half > cp.capped_max_throughput_Bps) {
    cp.loss_at_half_lambda = 0.0;
  } else {
    cp.loss_at_half_lambda = invert_throughput(half, params);
  }
  return cp;
}

Region classify_region(double loss_rate, const CriticalPoints& pts) {
  if (loss_rate < pts.loss_at_lambda) return Region::A;
  if (loss_rate < pts.loss_at_half_lambda) return Region::B;
  return Region::C;
}

}  // namespace pi
