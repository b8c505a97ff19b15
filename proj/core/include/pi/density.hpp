#pragma once

#include <functional>
#include <random>
#include <vector>

#include "pi/tcp_model.hpp"

namespace pi {

// Packet-loss model: Gamma(shape, scale) drawn in percent-like raw units,
// divided by rescale_divisor to get a loss fraction.
struct GammaParams {
  double shape = 2.8;
  double scale = 0.7;
  double rescale_divisor = 100.0;

  void validate() const;  // throws std::invalid_argument

  double rescaled_mean() const { return shape * scale / rescale_divisor; }
};

// A probability density tabulated on a strictly increasing grid, with cached
// trapezoid moments.
struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double mean = 0.0;
  double stddev = 0.0;
};

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
  bool variance_clamped = false;  // numerical noise drove the variance < 0
};

inline constexpr int kDensityGridPoints = 2048;
inline constexpr double kLossGridFloor = 1e-5;
// The default throughput grid spans the rates at loss kLossValidityCap and at
// this floor; going lower stretches the grid over a near-massless tail.
inline constexpr double kThroughputGridLossFloor = 5e-4;

// Standard Gamma pdf at x >= 0 (rescale_divisor plays no role here). Throws
// std::domain_error for x < 0.
double gamma_pdf(double x, const GammaParams& g);

// Trapezoid-rule mean and standard deviation of a tabulated density.
Moments distribution_moments(const DensityCurve& curve);

// Builds a normalized curve from raw grid/density samples. Validates that the
// grid is strictly increasing, values are finite and nonnegative, and the
// mass is positive; renormalizes to integrate to 1 and fills in the moments.
DensityCurve make_density_curve(std::vector<double> grid, std::vector<double> density);

// Gamma loss density truncated to [kLossGridFloor, kLossValidityCap] and
// renormalized, on a uniform grid of `points` samples.
DensityCurve loss_density_curve(const GammaParams& gamma, int points = kDensityGridPoints);

// One draw from the truncated rescaled Gamma. Rejection-samples until the
// value lands in (0, kLossValidityCap]; throws std::runtime_error if one
// million draws all miss.
double sample_loss_rate(const GammaParams& gamma, std::mt19937_64& rng);

// Density of Y = forward(X) for strictly monotone `forward`:
// f_Y(y) = f_X(x(y)) / |g'(x(y))|, tabulated on out_grid and renormalized.
// The inverse is found by bisection over the span of fx.grid and the
// derivative by finite differences. Throws std::invalid_argument when the
// sampled map is not strictly monotone and std::domain_error when an out_grid
// value falls outside the image of the span.
DensityCurve transform_density(const DensityCurve& fx,
                               const std::function<double(double)>& forward,
                               std::vector<double> out_grid);

// Density of the Reno throughput when loss follows loss_pdf. The output grid
// spans [rate(kLossValidityCap), rate(grid_loss_floor)].
DensityCurve throughput_density(const DensityCurve& loss_pdf, const TcpParams& params,
                                int points = kDensityGridPoints,
                                double grid_loss_floor = kThroughputGridLossFloor);

// CDF values of `curve` at each grid point (trapezoid accumulation, clamped
// to [0, 1]).
std::vector<double> density_cdf(const DensityCurve& curve);

// Inverse-CDF sampling from a tabulated density.
class DensitySampler {
 public:
  explicit DensitySampler(const DensityCurve& curve);

  double operator()(std::mt19937_64& rng) const;

 private:
  std::vector<double> grid_;
  std::vector<double> density_;
  std::vector<double> cdf_;
};

// Two-sided Kolmogorov-Smirnov statistic of `samples` against the CDF of
// `curve` (linear interpolation between grid points).
double ks_statistic(std::vector<double> samples, const DensityCurve& curve);

}  // namespace pi
