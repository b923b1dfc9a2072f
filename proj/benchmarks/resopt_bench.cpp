#include <benchmark/benchmark.h>

#include "resopt/analysis.hpp"
#include "resopt/dynamics.hpp"
#include "resopt/filter.hpp"
#include "resopt/generators.hpp"
#include "resopt/reproduce.hpp"
#include "resopt/robustness.hpp"

namespace {

using namespace resopt;

void BM_RsRobust(benchmark::State& state) {
  const Graph g = gen::grow_r_robust(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_rs_robust(g, 2, 2).holds);
  }
}
BENCHMARK(BM_RsRobust)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_MaxRobustness(benchmark::State& state) {
  const Graph g = gen::fig3(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_robustness(g));
}
BENCHMARK(BM_MaxRobustness)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MaxLocalSet(benchmark::State& state) {
  const Graph g = gen::erdos_renyi(static_cast<int>(state.range(0)), 0.3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(max_r_local_set(g, 1).size());
}
BENCHMARK(BM_MaxLocalSet)->DenseRange(10, 22, 4)->Unit(benchmark::kMillisecond);

void BM_LfFilter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Incoming> in;
  for (int j = 0; j < n; ++j) in.push_back({j, static_cast<double>((j * 37) % n)});
  for (auto _ : state) benchmark::DoNotOptimize(lf_filter(n / 2.0, in, 2));
}
BENCHMARK(BM_LfFilter)->Arg(8)->Arg(64)->Arg(512);

void BM_LfRun(benchmark::State& state) {
  SimConfig cfg = scenarios::oscillation(static_cast<int>(state.range(0)));
  cfg.record_details = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).horizon());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LfRun)->Args({10'000, 0})->Args({10'000, 1})->Unit(benchmark::kMillisecond);

void BM_BaselineRun(benchmark::State& state) {
  const SimConfig cfg = scenarios::baseline(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).horizon());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BaselineRun)->Arg(50'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
