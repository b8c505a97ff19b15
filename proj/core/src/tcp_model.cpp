#include "pi/tcp_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pi {

namespace {

void check_loss(double loss_rate) {
  if (!(loss_rate > 0.0) || loss_rate > kLossValidityCap) {
    throw std::domain_error("loss rate " + std::to_string(loss_rate) +
                            " outside (0, " + std::to_string(kLossValidityCap) + "]");
  }
}

}  // namespace

void TcpParams::validate() const {
  if (!(rtt_s > 0.0)) throw std::invalid_argument("rtt_s must be positive");
  if (!(timeout_s > 0.0)) throw std::invalid_argument("timeout_s must be positive");
  if (rounds_per_window_increment < 1) {
    throw std::invalid_argument("rounds_per_window_increment must be >= 1");
  }
  if (!(packet_size_bytes > 0.0)) {
    throw std::invalid_argument("packet_size_bytes must be positive");
  }
}

void LinkConstraints::validate() const {
  if (!(bottleneck_Bps > 0.0)) throw std::invalid_argument("bottleneck_Bps must be positive");
  if (advertised_window_pkts < 1) {
    throw std::invalid_argument("advertised_window_pkts must be >= 1");
  }
}

double LinkConstraints::window_cap_Bps(const TcpParams& tcp) const {
  return advertised_window_pkts * tcp.packet_size_bytes / tcp.rtt_s;
}

double reno_throughput_timeout(double loss_rate, const TcpParams& params) {
  params.validate();
  check_loss(loss_rate);
  const double p = loss_rate;
  // Fast-retransmit term sqrt(2bp/3) with the delayed-ACK factor fixed at 2.
  const double retransmit = params.rtt_s * (2.0 / std::numbers::sqrt3) * std::sqrt(p);
  const double timeout = params.timeout_s * (3.0 * std::numbers::sqrt3 / 2.0) *
                         p * std::sqrt(p) * (1.0 + 32.0 * p * p);
  return params.packet_size_bytes / (retransmit + timeout);
}

double reno_throughput_general(double loss_rate, const TcpParams& params, RenoBranch branch) {
  params.validate();
  check_loss(loss_rate);
  const double p = loss_rate;
  const double b = params.rounds_per_window_increment;
  const double retransmit = params.rtt_s * std::sqrt(2.0 * b * p / 3.0);
  if (branch == RenoBranch::without_timeout) {
    return params.packet_size_bytes / retransmit;
  }
  const double timeout = params.timeout_s *
                         std::min(1.0, 3.0 * std::sqrt(3.0 * b * p / 8.0)) *
                         p * (1.0 + 32.0 * p * p);
  return params.packet_size_bytes / (retransmit + timeout);
}

double effective_throughput(double loss_rate, const TcpParams& params,
                            const LinkConstraints& caps) {
  caps.validate();
  const double reno = reno_throughput_timeout(loss_rate, params);
  return std::min({reno, caps.bottleneck_Bps, caps.window_cap_Bps(params)});
}

double invert_throughput(double target_Bps, const TcpParams& params) {
  params.validate();
  if (!(target_Bps > 0.0)) throw std::domain_error("target rate must be positive");
  double lo = kLossFloor;
  double hi = kLossValidityCap;
  const double rate_lo = reno_throughput_timeout(hi, params);  // slowest
  const double rate_hi = reno_throughput_timeout(lo, params);  // fastest
  if (target_Bps < rate_lo || target_Bps > rate_hi) {
    throw std::domain_error("target rate " + std::to_string(target_Bps) +
                            " B/s outside achievable range [" + std::to_string(rate_lo) +
                            ", " + std::to_string(rate_hi) + "]");
  }
  // Throughput decreases in p, so bisect until the relative error is tiny.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double rate = reno_throughput_timeout(mid, params);
    if (std::abs(rate - target_Bps) <= 1e-9 * target_Bps) return mid;
    if (rate > target_Bps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pi
