#include <benchmark/benchmark.h>

#include <random>

#include "sandpile/dynamics.hpp"
#include "sandpile/explorer.hpp"
#include "sandpile/fixpoints.hpp"

using namespace sandpile;

namespace {

Configuration midway_config(Height n) {
  // halfway down the always-left trajectory: a wide, busy configuration
  Configuration c = Configuration::single(n);
  for (Height k = 0; k < n; ++k) c = psspm_step(c, Rule::Left);
  return c;
}

void BM_ParallelStep(benchmark::State& state) {
  const Configuration c = midway_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psspm_step(c, Rule::Left));
}
BENCHMARK(BM_ParallelStep)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SequentialSuccessors(benchmark::State& state) {
  const Configuration c = midway_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sspm_successors(c));
}
BENCHMARK(BM_SequentialSuccessors)->Arg(100)->Arg(1000);

void BM_LeftmostFixpoint(benchmark::State& state) {
  const Height n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(leftmost_fixpoint(n));
}
BENCHMARK(BM_LeftmostFixpoint)->Arg(50)->Arg(200)->Arg(500);

void BM_EnumerateChain(benchmark::State& state) {
  const Height n = state.range(0);
  for (auto _ : state) {
    const FixpointChain chain = enumerate_fixpoints(n);
    benchmark::DoNotOptimize(chain.points.size());
  }
}
BENCHMARK(BM_EnumerateChain)->Arg(50)->Arg(200)->Arg(500);

void BM_BfsPsspm(benchmark::State& state) {
  const Height n = state.range(0);
  for (auto _ : state) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    benchmark::DoNotOptimize(d.nodes.size());
  }
}
BENCHMARK(BM_BfsPsspm)->Arg(10)->Arg(15)->Arg(20);

void BM_BfsSspm(benchmark::State& state) {
  const Height n = state.range(0);
  for (auto _ : state) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Sspm);
    benchmark::DoNotOptimize(d.nodes.size());
  }
}
BENCHMARK(BM_BfsSspm)->Arg(8)->Arg(10)->Arg(12);

void BM_WeaklyClosePattern(benchmark::State& state) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<Height> values(static_cast<std::size_t>(state.range(0)));
  // balanced blocks so the scan never bails early
  for (std::size_t i = 0; i + 1 < values.size(); i += 2) {
    values[i] = -1;
    values[i + 1] = 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(weakly_close_pattern(values));
}
BENCHMARK(BM_WeaklyClosePattern)->Arg(64)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
