#include <benchmark/benchmark.h>

#include "spinrelay/experiments.hpp"
#include "spinrelay/fidelity.hpp"

namespace {

using namespace spinrelay;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SweepTau(benchmark::State& state) {
  const ChainConfig config = ChainConfig::uniform(8, 0.05, 0.02);
  const std::vector<double> taus{20, 40, 60, 80, 100, 120, 140, 160};
  SweepSettings settings;
  settings.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_tau(config, taus, settings));
  }
}
BENCHMARK(BM_SweepTau)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HaarAverage(benchmark::State& state) {
  const ChainConfig config = ChainConfig::uniform(12, 0.05, 0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_average_mc(config, 300.0, 10000, 42, mode(state)));
  }
}
BENCHMARK(BM_HaarAverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
