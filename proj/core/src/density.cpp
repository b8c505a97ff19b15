#include "pi/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pi {

namespace {

void check_curve_shape(const std::vector<double>& grid, const std::vector<double>& density) {
  if (grid.size() != density.size()) {
    throw std::invalid_argument("grid and density lengths differ");
  }
  if (grid.size() < 2) throw std::invalid_argument("density curve needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(density[i])) {
      throw std::invalid_argument("density curve contains non-finite values");
    }
    if (density[i] < 0.0) throw std::invalid_argument("density values must be nonnegative");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
}

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values) {
  double total = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    total += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return total;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  grid.back() = hi;
  return grid;
}

// Linear interpolation of a tabulated function, clamped at the ends.
double interp(const std::vector<double>& grid, const std::vector<double>& values, double x) {
  if (x <= grid.front()) return values.front();
  if (x >= grid.back()) return values.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return values[i - 1] + t * (values[i] - values[i - 1]);
}

}  // namespace

void GammaParams::validate() const {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("gamma scale must be positive");
  if (!(rescale_divisor > 0.0)) {
    throw std::invalid_argument("gamma rescale_divisor must be positive");
  }
}

double gamma_pdf(double x, const GammaParams& g) {
  g.validate();
  if (x < 0.0) throw std::domain_error("gamma pdf argument must be nonnegative");
  const double k = g.shape;
  if (x == 0.0) {
    if (k > 1.0) return 0.0;
    if (k == 1.0) return 1.0 / g.scale;
    return std::numeric_limits<double>::infinity();
  }
  const double log_pdf = (k - 1.0) * std::log(x) - x / g.scale - std::lgamma(k) -
                         k * std::log(g.scale);
  return std::exp(log_pdf);
}

Moments distribution_moments(const DensityCurve& curve) {
  check_curve_shape(curve.grid, curve.density);
  const std::size_t n = curve.grid.size();
  std::vector<double> weighted(n), weighted2(n);
  for (std::size_t i = 0; i < n; ++i) {
    weighted[i] = curve.grid[i] * curve.density[i];
    weighted2[i] = curve.grid[i] * curve.grid[i] * curve.density[i];
  }
  const double mass = trapezoid(curve.grid, curve.density);
  if (!(mass > 0.0)) throw std::invalid_argument("density curve has zero mass");
  Moments m;
  m.mean = trapezoid(curve.grid, weighted) / mass;
  double variance = trapezoid(curve.grid, weighted2) / mass - m.mean * m.mean;
  if (variance < 0.0) {
    variance = 0.0;
    m.variance_clamped = true;
  }
  m.stddev = std::sqrt(variance);
  return m;
}

DensityCurve make_density_curve(std::vector<double> grid, std::vector<double> density) {
  check_curve_shape(grid, density);
  const double mass = trapezoid(grid, density);
  if (!(mass > 0.0)) throw std::invalid_argument("density curve has zero mass");
  for (double& d : density) d /= mass;
  DensityCurve curve{std::move(grid), std::move(density), 0.0, 0.0};
  const Moments m = distribution_moments(curve);
  curve.mean = m.mean;
  curve.stddev = m.stddev;
  return curve;
}

DensityCurve loss_density_curve(const GammaParams& gamma, int points) {
  gamma.validate();
  if (points < 2) throw std::invalid_argument("need at least 2 grid points");
  std::vector<double> grid = linspace(kLossGridFloor, kLossValidityCap, points);
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Change of variables x -> x * divisor back to raw Gamma units.
    density[i] = gamma_pdf(grid[i] * gamma.rescale_divisor, gamma) * gamma.rescale_divisor;
  }
  return make_density_curve(std::move(grid), std::move(density));
}

double sample_loss_rate(const GammaParams& gamma, std::mt19937_64& rng) {
  gamma.validate();
  std::gamma_distribution<double> dist(gamma.shape, gamma.scale);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double value = dist(rng) / gamma.rescale_divisor;
    if (value > 0.0 && value <= kLossValidityCap) return value;
  }
  throw std::runtime_error("loss-rate rejection sampling failed to terminate");
}

DensityCurve transform_density(const DensityCurve& fx,
                               const std::function<double(double)>& forward,
                               std::vector<double> out_grid) {
  check_curve_shape(fx.grid, fx.density);
  if (out_grid.size() < 2) throw std::invalid_argument("need at least 2 output grid points");

  // Monotonicity probe: the map must not change direction anywhere on the
  // input grid.
  std::vector<double> mapped(fx.grid.size());
  for (std::size_t i = 0; i < fx.grid.size(); ++i) mapped[i] = forward(fx.grid[i]);
  const bool increasing = mapped.back() > mapped.front();
  for (std::size_t i = 1; i < mapped.size(); ++i) {
    const double diff = mapped[i] - mapped[i - 1];
    if ((increasing && !(diff > 0.0)) || (!increasing && !(diff < 0.0))) {
      throw std::invalid_argument("forward map is not strictly monotone on the grid span");
    }
  }

  const double x_lo = fx.grid.front();
  const double x_hi = fx.grid.back();
  const double y_lo = std::min(mapped.front(), mapped.back());
  const double y_hi = std::max(mapped.front(), mapped.back());
  const double y_slack = 1e-9 * (y_hi - y_lo);

  std::vector<double> out_density(out_grid.size());
  for (std::size_t j = 0; j < out_grid.size(); ++j) {
    double y = out_grid[j];
    if (y < y_lo - y_slack || y > y_hi + y_slack) {
      throw std::domain_error("output grid value " + std::to_string(y) +
                              " outside the image of the input span");
    }
    y = std::clamp(y, y_lo, y_hi);

    // Invert y = forward(x) by bisection.
    double lo = x_lo, hi = x_hi;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (x_hi - x_lo); ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool above = forward(mid) > y;
      if (above == increasing) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double x = 0.5 * (lo + hi);

    // |g'(x)| by finite differences, one-sided at the span ends.
    double h = 1e-7 * std::max(std::abs(x), 1e-3 * (x_hi - x_lo));
    double deriv;
    if (x - h < x_lo) {
      deriv = (forward(x + h) - forward(x)) / h;
    } else if (x + h > x_hi) {
      deriv = (forward(x) - forward(x - h)) / h;
    } else {
      deriv = (forward(x + h) - forward(x - h)) / (2.0 * h);
    }
    const double slope = std::abs(deriv);
    out_density[j] = slope > 0.0 ? interp(fx.grid, fx.density, x) / slope : 0.0;
  }
  return make_density_curve(std::move(out_grid), std::move(out_density));
}

DensityCurve throughput_density(const DensityCurve& loss_pdf, const TcpParams& params,
                                int points, double grid_loss_floor) {
  params.validate();
  if (points < 2) throw std::invalid_argument("need at least 2 grid points");
  if (!(grid_loss_floor > 0.0) || grid_loss_floor >= kLossValidityCap) {
    throw std::invalid_argument("grid_loss_floor must lie in (0, loss cap)");
  }
  const double rate_lo = reno_throughput_timeout(kLossValidityCap, params);
  const double rate_hi = reno_throughput_timeout(grid_loss_floor, params);
  auto forward = [&params](double p) { return reno_throughput_timeout(p, params); };
  return transform_density(loss_pdf, forward, linspace(rate_lo, rate_hi, points));
}

std::vector<double> density_cdf(const DensityCurve& curve) {
  check_curve_shape(curve.grid, curve.density);
  std::vector<double> cdf(curve.grid.size(), 0.0);
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (curve.density[i] + curve.density[i - 1]) *
                              (curve.grid[i] - curve.grid[i - 1]);
  }
  for (double& v : cdf) v = std::clamp(v, 0.0, 1.0);
  return cdf;
}

DensitySampler::DensitySampler(const DensityCurve& curve)
    : grid_(curve.grid), density_(curve.density), cdf_(density_cdf(curve)) {
  const double total = cdf_.back();
  if (!(total > 0.0)) throw std::invalid_argument("cannot sample a zero-mass density");
  for (double& v : cdf_) v /= total;
  for (double& v : density_) v /= total;
}

double DensitySampler::operator()(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return grid_.front();
  if (it == cdf_.end()) return grid_.back();
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  const double dx = grid_[i] - grid_[i - 1];
  const double f0 = density_[i - 1];
  const double f1 = density_[i];
  const double mass = u - cdf_[i - 1];
  // Solve for the offset xi within the cell where the trapezoid mass
  // f0*xi + (f1-f0)/(2 dx) * xi^2 reaches `mass`.
  const double a = (f1 - f0) / (2.0 * dx);
  const double disc = std::max(f0 * f0 + 4.0 * a * mass, 0.0);
  const double denom = f0 + std::sqrt(disc);
  double xi = denom > 0.0 ? 2.0 * mass / denom : 0.5 * dx;
  xi = std::clamp(xi, 0.0, dx);
  return grid_[i - 1] + xi;
}

double ks_statistic(std::vector<double> samples, const DensityCurve& curve) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  const std::vector<double> cdf = density_cdf(curve);
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = interp(curve.grid, cdf, samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace pi
