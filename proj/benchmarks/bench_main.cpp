// Microbenchmarks for the hot paths: kernel evaluation by route, the
// oscillatory piecewise-cubic integrator, sector transforms, line
// multipliers, and the maximal function.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "threshscatter/filon.hpp"
#include "threshscatter/grid.hpp"
#include "threshscatter/harmonic.hpp"
#include "threshscatter/kernels.hpp"
#include "threshscatter/means.hpp"

namespace {

ts::RadialProfile gaussian(int m) {
  const ts::GridSpec g{1e-3, 30.0, 800};
  return ts::RadialProfile::sample(m, 0, 0.0, ts::log_grid(g), [](double r) {
    return ts::complex{std::exp(-0.5 * r * r), 0.0};
  });
}

void BM_kernel_odd_closed(benchmark::State& state) {
  const int m = int(state.range(0));
  double r = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::eval_kernel_odd(m, ts::complex{1.1, 0.0}, r));
    r = r < 9.0 ? r + 0.1 : 0.3;
  }
}
BENCHMARK(BM_kernel_odd_closed)->Arg(5)->Arg(9);

void BM_kernel_general(benchmark::State& state) {
  const int m = int(state.range(0));
  double r = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::eval_kernel_general(m, ts::complex{1.1, 0.0}, r));
    r = r < 9.0 ? r + 0.1 : 0.3;
  }
}
BENCHMARK(BM_kernel_general)->Arg(4)->Arg(7);

void BM_kernel_even_superposition(benchmark::State& state) {
  double r = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::eval_kernel_even(6, ts::complex{1.1, 0.0}, r));
    r = r < 9.0 ? r + 0.1 : 0.3;
  }
}
BENCHMARK(BM_kernel_even_superposition);

void BM_filon_exp(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::vector<double> xs(n);
  std::vector<ts::complex> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 30.0 * double(i) / double(n - 1);
    fs[i] = ts::complex{std::exp(-0.1 * xs[i]) * std::cos(xs[i]), 0.0};
  }
  const ts::PiecewiseCubic pc(xs, fs);
  double w = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pc.integrate_exp(w));
    w = w < 200.0 ? w * 1.1 : 1.0;
  }
}
BENCHMARK(BM_filon_exp)->Arg(1000)->Arg(4000);

void BM_sector_transform(benchmark::State& state) {
  const ts::RadialProfile u = gaussian(int(state.range(0)));
  double rho = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::sector_transform(u, rho));
    rho = rho < 5.0 ? rho + 0.05 : 0.1;
  }
}
BENCHMARK(BM_sector_transform)->Arg(3)->Arg(4);

void BM_hilbert(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ts::LineSignal u =
      ts::LineSignal::sample(-40.0, 80.0 / double(n - 1), n, [](double x) {
        return ts::complex{1.0 / (1.0 + x * x), 0.0};
      });
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::hilbert_transform(u));
  }
}
BENCHMARK(BM_hilbert)->Arg(1024)->Arg(8192);

void BM_maximal(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ts::LineSignal u =
      ts::LineSignal::sample(-40.0, 80.0 / double(n - 1), n, [](double x) {
        return ts::complex{std::exp(-0.1 * std::abs(x)) * std::cos(x), 0.0};
      });
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::maximal_function(u));
  }
}
BENCHMARK(BM_maximal)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
