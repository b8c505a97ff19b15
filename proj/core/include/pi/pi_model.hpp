#pragma once

#include <string>

#include "pi/tcp_model.hpp"

namespace pi {

// Closed-form steady-state pause/play metrics for mean throughput `eta`,
// playout rate `lambda`, and buffer fluctuation area `q0` (all bytes/s and
// bytes).
struct PauseMetrics {
  double avg_pause_duration_s = 0.0;  // NaN when no pauses occur
  double avg_play_duration_s = 0.0;   // NaN when no pauses occur
  double period_s = 0.0;              // +inf when no pauses occur
  double pause_frequency_hz = 0.0;
  double pause_intensity = 0.0;       // fraction of time spent paused
  double period_sensitivity = 0.0;    // d(period)/d(eta); NaN when no pauses
  bool no_pause = false;              // eta >= lambda
};

PauseMetrics pause_play_metrics(double eta_Bps, double lambda_Bps, double q0_bytes);

// max(0, 1 - eta/lambda).
double pause_intensity(double eta_Bps, double lambda_Bps);

// d(period)/d(eta) for 0 < eta < lambda:
//   -q0 * lambda * (lambda - 2 eta) / (eta * (lambda - eta))^2
// Zero exactly at eta = lambda/2, where pause frequency peaks.
double period_sensitivity(double eta_Bps, double lambda_Bps, double q0_bytes);

// Qualitative streaming regimes over the loss-rate axis.
enum class Region {
  A,  // eta >= lambda: no pauses
  B,  // lambda/2 < eta < lambda: pauses, frequency still rising with loss
  C,  // eta <= lambda/2: frequency falling, durations growing
};

std::string region_label(Region r);

struct CriticalPoints {
  double loss_at_lambda = 0.0;       // p0: eta(p0) = lambda (0 if unreachable)
  double loss_at_half_lambda = 0.0;  // p1: eta(p1) = lambda/2 (0 if unreachable)
  bool always_pause = false;         // even the uncapped best rate < lambda
  double capped_max_throughput_Bps = 0.0;
};

// Locates the region boundaries for the given link. Boundaries are solved on
// the uncapped Reno curve; when the capped maximum rate sits below lambda
// (or lambda/2) the corresponding boundary is reported as 0 with the
// always_pause flag set as appropriate. Throws std::domain_error when lambda
// (or lambda/2) falls below the worst-case rate at kLossValidityCap.
CriticalPoints critical_points(const TcpParams& params, const LinkConstraints& caps,
                               double lambda_Bps);

// Classifies a loss rate against precomputed boundaries: A below p0, B in
// [p0, p1), C at and above p1.
Region classify_region(double loss_rate, const CriticalPoints& pts);

}  // namespace pi
