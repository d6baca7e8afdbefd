// Serial reference vs OpenMP kernels on pipeline-sized inputs.
// Run with --benchmark_filter=<kernel> to narrow down.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "trackgeom/kernels.hpp"

namespace k = trackgeom::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) x = s = 0.95 * s + g(rng);  // some low-pass colour
  return v;
}

// 200 s at 256 Hz, one delay estimate every 240 samples
struct LagInput {
  std::vector<double> front = noise(51200, 1);
  std::vector<double> back;
  std::vector<std::size_t> centres;
  k::LagSearch search;
  LagInput() {
    back.assign(front.size(), 0.0);
    for (std::size_t i = 64; i < front.size(); ++i) back[i] = front[i - 64];
    for (std::size_t c = 480; c + 480 < front.size(); c += 240) centres.push_back(c);
  }
};

template <bool Parallel>
void BM_lag_peaks(benchmark::State& state) {
  static const LagInput in;
  std::vector<k::LagPeak> out(in.centres.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      k::omp::lag_peaks(in.front, in.back, in.centres, in.search, out);
    else
      k::serial::lag_peaks(in.front, in.back, in.centres, in.search, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.centres.size()));
}

template <bool Parallel>
void BM_chord_offsets(benchmark::State& state) {
  const auto z = noise(static_cast<std::size_t>(state.range(0)), 2);
  std::vector<double> out(z.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      k::omp::chord_offsets(z, 70, out);
    else
      k::serial::chord_offsets(z, 70, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_tumbling_max(benchmark::State& state) {
  const auto v = noise(static_cast<std::size_t>(state.range(0)), 3);
  const std::vector<std::uint8_t> valid(v.size(), 1);
  for (auto _ : state) {
    auto r = Parallel ? k::omp::tumbling_max(v, valid, 400, k::MaxMode::max_abs)
                      : k::serial::tumbling_max(v, valid, 400, k::MaxMode::max_abs);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_running_median(benchmark::State& state) {
  const auto v = noise(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto r = Parallel ? k::omp::running_median(v, 128) : k::serial::running_median(v, 128);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_shift_scan(benchmark::State& state) {
  const auto a = noise(static_cast<std::size_t>(state.range(0)), 5);
  const auto b = noise(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) {
    auto r = Parallel ? k::omp::shift_scan(a, b, -2000, 2000, 1000) : k::serial::shift_scan(a, b, -2000, 2000, 1000);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * 4001);
}

}  // namespace

BENCHMARK(BM_lag_peaks<false>)->Name("lag_peaks/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lag_peaks<true>)->Name("lag_peaks/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_chord_offsets<false>)->Name("chord_offsets/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_chord_offsets<true>)->Name("chord_offsets/omp")->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_tumbling_max<false>)->Name("tumbling_max/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_tumbling_max<true>)->Name("tumbling_max/omp")->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_running_median<false>)->Name("running_median/serial")->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_running_median<true>)->Name("running_median/omp")->Arg(1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_shift_scan<false>)->Name("shift_scan/serial")->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_scan<true>)->Name("shift_scan/omp")->Arg(8000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
