#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pi/density.hpp"
#include "pi/pause_statistics.hpp"
#include "pi/simulator.hpp"
#include "pi/subjective.hpp"
#include "pi/tcp_model.hpp"

namespace {

const pi::TcpParams kTcp{};
const pi::GammaParams kLoss{};

void BM_RenoThroughput(benchmark::State& state) {
  double p = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::reno_throughput_timeout(p, kTcp));
    p = p >= 0.1199 ? 0.001 : p + 1e-5;
  }
}
BENCHMARK(BM_RenoThroughput);

void BM_InvertThroughput(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::invert_throughput(50000.0, kTcp));
  }
}
BENCHMARK(BM_InvertThroughput);

void BM_ThroughputDensity(benchmark::State& state) {
  const auto loss = pi::loss_density_curve(kLoss, int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::throughput_density(loss, kTcp, int(state.range(0))));
  }
}
BENCHMARK(BM_ThroughputDensity)->Arg(512)->Arg(2048);

void BM_PausePmf(benchmark::State& state) {
  const auto th = pi::throughput_density(pi::loss_density_curve(kLoss), kTcp);
  const pi::BufferThresholds buf;
  pi::SegmentConfig seg;
  seg.segment_length_s = 0.1;
  seg.max_segments = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::pause_duration_distribution(th, buf, seg));
  }
}
BENCHMARK(BM_PausePmf)->Arg(2000)->Arg(20000);

void BM_FirstPassageMC(benchmark::State& state) {
  const auto th = pi::throughput_density(pi::loss_density_curve(kLoss), kTcp);
  const pi::BufferThresholds buf;
  const pi::SegmentConfig seg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::first_passage_monte_carlo(
        th, buf.fluctuation_area(), seg, 0.0, std::size_t(state.range(0)), 1));
  }
}
BENCHMARK(BM_FirstPassageMC)->Arg(10000)->Arg(100000);

void BM_RunSession(benchmark::State& state) {
  pi::SimConfig cfg;
  cfg.loss_rate = 0.035;
  cfg.session_length_s = double(state.range(0));
  cfg.mode = state.range(1) ? pi::SimMode::stochastic : pi::SimMode::deterministic;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::run_session(cfg));
  }
}
BENCHMARK(BM_RunSession)->Args({1000, 0})->Args({10000, 0})->Args({10000, 1});

void BM_Pearson(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> x(size_t(state.range(0))), y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = noise(rng);
    y[i] = x[i] + noise(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi::pearson(x, y));
  }
}
BENCHMARK(BM_Pearson)->Arg(46)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
