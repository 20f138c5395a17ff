// Serial vs OpenMP timings for the hot paths: grid evaluation of the
// weight estimator, the blocked reduction primitive, and a Monte Carlo
// summary. Run with --benchmark_filter=... to narrow.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "akde/estimators.hpp"
#include "akde/kernels.hpp"
#include "akde/lognormal.hpp"
#include "akde/montecarlo.hpp"
#include "akde/parallel.hpp"
#include "akde/rng.hpp"
#include "akde/samples.hpp"

namespace {

akde::SampleSet make_samples(std::size_t n) {
  akde::LogNormalRef ref(1.0, 1.0);
  return ref.sample(n, akde::RandomStream(42));
}

void bench_on_grid(benchmark::State& state, akde::Execution exec) {
  const auto samples = make_samples(2000);
  akde::DensityEstimate est(
      akde::KernelSpec(akde::KernelFamily::gamma, akde::Role::improper, 0.25),
      samples);
  const auto grid = akde::geometric_grid(0.05, 40.0, 256);
  for (auto _ : state) {
    auto values = est.on_grid(grid, exec);
    benchmark::DoNotOptimize(values.data());
  }
}

void bench_blocked_sum(benchmark::State& state, akde::Execution exec) {
  const std::size_t n = 1 << 20;
  for (auto _ : state) {
    double total = akde::blocked_sum(n, exec, [](std::size_t i) {
      return std::sqrt(static_cast<double>(i) + 0.5);
    });
    benchmark::DoNotOptimize(total);
  }
}

void bench_mc_summary(benchmark::State& state, akde::Execution exec) {
  akde::LogNormalRef ref(1.0, 1.0);
  akde::KernelSpec spec(akde::KernelFamily::gamma, akde::Role::improper, 0.3);
  const std::vector<double> points{0.5, 1.0, 2.0, 4.0};
  for (auto _ : state) {
    auto summary =
        akde::mc_estimator_summary(spec, ref, 200, points, 40, 9, false, exec);
    benchmark::DoNotOptimize(summary.mean.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_on_grid, serial, akde::Execution::serial);
BENCHMARK_CAPTURE(bench_on_grid, openmp, akde::Execution::openmp);
BENCHMARK_CAPTURE(bench_blocked_sum, serial, akde::Execution::serial);
BENCHMARK_CAPTURE(bench_blocked_sum, openmp, akde::Execution::openmp);
BENCHMARK_CAPTURE(bench_mc_summary, serial, akde::Execution::serial);
BENCHMARK_CAPTURE(bench_mc_summary, openmp, akde::Execution::openmp);

BENCHMARK_MAIN();
