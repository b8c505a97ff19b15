#include "doctest.h"

#include "pi/pi_model.hpp"
#include "pi/tcp_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace {
constexpr double kLambda = 100000.0;
constexpr double kQ0 = 198500.0;
}  // namespace

TEST_CASE("metrics at half the playout rate") {
  auto m = pi::pause_play_metrics(50000.0, kLambda, kQ0);
  CHECK(m.avg_pause_duration_s == doctest::Approx(3.97));
  CHECK(m.avg_play_duration_s == doctest::Approx(3.97));
  CHECK(m.period_s == doctest::Approx(7.94));
  CHECK(m.pause_frequency_hz == doctest::Approx(0.125944584).epsilon(1e-8));
  CHECK(m.pause_intensity == doctest::Approx(0.5));
  CHECK(m.period_sensitivity == 0.0);  // frequency peak: exact zero
  CHECK_FALSE(m.no_pause);
}

TEST_CASE("metrics at three quarters of the playout rate") {
  auto m = pi::pause_play_metrics(75000.0, kLambda, kQ0);
  CHECK(m.avg_pause_duration_s == doctest::Approx(198500.0 / 75000.0));
  CHECK(m.avg_play_duration_s == doctest::Approx(198500.0 / 25000.0));
  CHECK(m.pause_frequency_hz == doctest::Approx(0.0944584).epsilon(1e-6));
  CHECK(m.pause_intensity == doctest::Approx(0.25));
  CHECK(m.period_sensitivity > 0.0);  // past the frequency peak
}

TEST_CASE("no pauses at or above the playout rate") {
  for (double eta : {kLambda, 1.5 * kLambda}) {
    auto m = pi::pause_play_metrics(eta, kLambda, kQ0);
    CHECK(m.no_pause);
    CHECK(std::isnan(m.avg_pause_duration_s));
    CHECK(std::isnan(m.avg_play_duration_s));
    CHECK(std::isinf(m.period_s));
    CHECK(m.pause_frequency_hz == 0.0);
    CHECK(m.pause_intensity == 0.0);
    CHECK(std::isnan(m.period_sensitivity));
  }
}

TEST_CASE("intensity = duration * frequency and period = pause + play") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> lam(1e4, 1e6);
  std::uniform_real_distribution<double> ratio(0.01, 0.99);
  std::uniform_real_distribution<double> q0(1e3, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double lambda = lam(rng);
    const double eta = ratio(rng) * lambda;
    const double q = q0(rng);
    auto m = pi::pause_play_metrics(eta, lambda, q);
    const double pi_from_parts = m.avg_pause_duration_s * m.pause_frequency_hz;
    CHECK(std::abs(pi_from_parts - m.pause_intensity) <= 1e-12 * m.pause_intensity);
    const double w = m.avg_pause_duration_s + m.avg_play_duration_s;
    CHECK(std::abs(w - m.period_s) <= 1e-12 * m.period_s);
    CHECK(m.pause_intensity == doctest::Approx(1.0 - eta / lambda).epsilon(1e-12));
    CHECK(m.pause_frequency_hz == doctest::Approx(1.0 / m.period_s).epsilon(1e-12));
  }
}

TEST_CASE("pause intensity does not depend on the buffer size") {
  for (double q : {1e3, 1e5, 1e7}) {
    auto m = pi::pause_play_metrics(60000.0, kLambda, q);
    CHECK(m.pause_intensity == pi::pause_intensity(60000.0, kLambda));
  }
  CHECK(pi::pause_intensity(120000.0, kLambda) == 0.0);  // clamped, never negative
}

TEST_CASE("frequency peaks at half the playout rate with value lambda/(4 q0)") {
  double best_eta = 0.0, best_f = -1.0;
  for (double eta = 1000.0; eta < kLambda; eta += 1000.0) {
    auto m = pi::pause_play_metrics(eta, kLambda, kQ0);
    if (m.pause_frequency_hz > best_f) {
      best_f = m.pause_frequency_hz;
      best_eta = eta;
    }
  }
  CHECK(best_eta == doctest::Approx(kLambda / 2));
  CHECK(best_f == doctest::Approx(kLambda / (4 * kQ0)).epsilon(1e-12));
}

TEST_CASE("period sensitivity matches a central finite difference") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ratio(0.05, 0.95);
  int tested = 0;
  while (tested < 20) {
    const double r = ratio(rng);
    if (std::abs(r - 0.5) < 0.05) continue;  // relative error is meaningless at the zero
    ++tested;
    const double eta = r * kLambda;
    const double h = 1e-5 * eta;
    auto period = [&](double e) { return pi::pause_play_metrics(e, kLambda, kQ0).period_s; };
    const double fd = (period(eta + h) - period(eta - h)) / (2 * h);
    const double beta = pi::period_sensitivity(eta, kLambda, kQ0);
    CHECK(std::abs(beta - fd) <= 1e-6 * std::abs(beta));
  }
  CHECK(pi::period_sensitivity(kLambda / 2, kLambda, kQ0) == 0.0);
  CHECK(pi::period_sensitivity(kLambda / 4, kLambda, kQ0) < 0.0);
  CHECK(pi::period_sensitivity(3 * kLambda / 4, kLambda, kQ0) > 0.0);
}

TEST_CASE("invalid closed-form inputs are rejected") {
  CHECK_THROWS_AS(pi::pause_play_metrics(0.0, kLambda, kQ0), std::domain_error);
  CHECK_THROWS_AS(pi::pause_play_metrics(50000.0, 0.0, kQ0), std::domain_error);
  CHECK_THROWS_AS(pi::pause_play_metrics(50000.0, kLambda, 0.0), std::domain_error);
  CHECK_THROWS_AS(pi::pause_intensity(-1.0, kLambda), std::domain_error);
  CHECK_THROWS_AS(pi::pause_intensity(50000.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(pi::period_sensitivity(0.0, kLambda, kQ0), std::domain_error);
  CHECK_THROWS_AS(pi::period_sensitivity(kLambda, kLambda, kQ0), std::domain_error);
}

TEST_CASE("region boundaries for the reference link") {
  const pi::TcpParams tcp{};
  const pi::LinkConstraints caps{};
  auto pts = pi::critical_points(tcp, caps, kLambda);

  // Frozen from a dense sweep of the Reno curve.
  CHECK(pts.loss_at_lambda == doctest::Approx(0.0098563).epsilon(1e-5));
  CHECK(pts.loss_at_half_lambda == doctest::Approx(0.0351731).epsilon(1e-5));
  CHECK(pts.loss_at_lambda < pts.loss_at_half_lambda);
  CHECK_FALSE(pts.always_pause);
  CHECK(pts.capped_max_throughput_Bps == doctest::Approx(125000.0));

  // Throughput at the boundaries really is lambda and lambda/2.
  CHECK(pi::reno_throughput_timeout(pts.loss_at_lambda, tcp) ==
        doctest::Approx(kLambda).epsilon(1e-8));
  CHECK(pi::reno_throughput_timeout(pts.loss_at_half_lambda, tcp) ==
        doctest::Approx(kLambda / 2).epsilon(1e-8));

  CHECK(pi::classify_region(0.005, pts) == pi::Region::A);
  CHECK(pi::classify_region(0.02, pts) == pi::Region::B);
  CHECK(pi::classify_region(0.05, pts) == pi::Region::C);
  CHECK(pi::classify_region(pts.loss_at_lambda, pts) == pi::Region::B);
  CHECK(pi::classify_region(pts.loss_at_half_lambda, pts) == pi::Region::C);

  CHECK(pi::region_label(pi::Region::A) == "A");
  CHECK(pi::region_label(pi::Region::B) == "B");
  CHECK(pi::region_label(pi::Region::C) == "C");
}

TEST_CASE("links that can never keep up are flagged") {
  const pi::TcpParams tcp{};
  const pi::LinkConstraints caps{};

  // Playout above the 1 Mbit/s bottleneck: pauses at every loss rate.
  auto pts = pi::critical_points(tcp, caps, 250000.0);
  CHECK(pts.always_pause);
  CHECK(pts.loss_at_lambda == 0.0);
  CHECK(pts.loss_at_half_lambda > 0.0);  // lambda/2 = 125 KB/s is still reachable (uncapped)
  CHECK(pts.capped_max_throughput_Bps == doctest::Approx(125000.0));

  // Even lambda/2 above every cap.
  auto pts2 = pi::critical_points(tcp, caps, 460000.0);
  CHECK(pts2.always_pause);
  CHECK(pts2.loss_at_lambda == 0.0);
  CHECK(pts2.loss_at_half_lambda == 0.0);

  // Playout below the worst-case Reno rate: the boundary equations have no
  // solution in the trusted loss range.
  CHECK_THROWS_AS(pi::critical_points(tcp, caps, 15000.0), std::domain_error);
}
