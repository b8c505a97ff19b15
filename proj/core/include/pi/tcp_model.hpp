#pragma once

namespace pi {

// Steady-state TCP-Reno connection parameters.
struct TcpParams {
  double rtt_s = 0.128;
  double timeout_s = 0.128;
  // Rounds per congestion-window increment (delayed-ACK factor).
  int rounds_per_window_increment = 2;
  double packet_size_bytes = 1500.0;

  void validate() const;  // throws std::invalid_argument
};

// Path constraints that cap the achievable rate below the Reno estimate.
struct LinkConstraints {
  double bottleneck_Bps = 125000.0;
  int advertised_window_pkts = 20;

  void validate() const;  // throws std::invalid_argument

  // Rate ceiling imposed by the receiver window: Wm * packet / RTT.
  double window_cap_Bps(const TcpParams& tcp) const;
};

// The Reno formula is only trusted for loss rates up to this value.
inline constexpr double kLossValidityCap = 0.12;
// Smallest loss rate the inversion will report; below this the formula's
// output exceeds any realistic link anyway.
inline constexpr double kLossFloor = 1e-6;

enum class RenoBranch {
  with_timeout,     // retransmission-timeout term included
  without_timeout,  // fast-retransmit only
};

// Full Reno steady-state throughput in bytes/s, loss in (0, kLossValidityCap].
// Uses the fixed delayed-ACK coefficient (b = 2) regardless of params.
double reno_throughput_timeout(double loss_rate, const TcpParams& params);

// General form parameterized by rounds_per_window_increment, with or without
// the timeout term. Bytes/s.
double reno_throughput_general(double loss_rate, const TcpParams& params, RenoBranch branch);

// min(Reno, bottleneck, window cap). Bytes/s.
double effective_throughput(double loss_rate, const TcpParams& params,
                            const LinkConstraints& caps);

// Inverse of reno_throughput_timeout via bisection on
// [kLossFloor, kLossValidityCap]. Throws std::domain_error when the target
// rate is outside the achievable range.
double invert_throughput(double target_Bps, const TcpParams& params);

}  // namespace pi
