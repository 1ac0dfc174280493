#include <benchmark/benchmark.h>

#include "mslln/convolution.hpp"
#include "mslln/innovations.hpp"
#include "mslln/kernel.hpp"
#include "mslln/linproc.hpp"
#include "mslln/statistic.hpp"

using namespace mslln;

namespace {

std::vector<double> gaussian(std::size_t n) { return sample(InnovationSpec{}, n, 7); }

void BM_ConvolveDirect(benchmark::State& state) {
  const auto window = state.range(0);
  CoefficientSpec spec;
  spec.window = window;
  const auto kernel = coefficient_kernel(spec);
  const auto signal = gaussian(4096 + 2 * static_cast<std::size_t>(window));
  for (auto _ : state) benchmark::DoNotOptimize(convolve_valid_direct(signal, kernel));
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_ConvolveFft(benchmark::State& state) {
  const auto window = state.range(0);
  CoefficientSpec spec;
  spec.window = window;
  const auto kernel = coefficient_kernel(spec);
  const auto signal = gaussian(4096 + 2 * static_cast<std::size_t>(window));
  const FftConvolver conv(kernel, signal.size());
  for (auto _ : state) benchmark::DoNotOptimize(conv.apply(signal));
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_ConvolveFft)->RangeMultiplier(4)->Range(64, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_SimulatePaths(benchmark::State& state) {
  const auto config = ProcessConfig::uniform(static_cast<int>(state.range(0)), 0.75, InnovationSpec{}, 1 << 16, 1 << 14,
                                             Sharing::independent);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_paths(config, ++seed));
}
BENCHMARK(BM_SimulatePaths)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerdictTable(benchmark::State& state) {
  const auto x = gaussian(static_cast<std::size_t>(state.range(0)));
  TableRequest req;
  for (auto _ : state) benchmark::DoNotOptimize(verdict_table(x, req));
}
BENCHMARK(BM_VerdictTable)->Arg(2601)->Arg(1 << 14)->Unit(benchmark::kMicrosecond);

void BM_KernelCrossSum(benchmark::State& state) {
  const auto radius = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_cross_sum(100, 0, 0.75, 0.75, radius));
}
BENCHMARK(BM_KernelCrossSum)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
