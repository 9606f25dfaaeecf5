#include <benchmark/benchmark.h>

#include "xorgame/game.hpp"
#include "xorgame/gram_sdp.hpp"

namespace {

using namespace xorgame;

// Square games, classical enumeration costs 2^(S+T).
void BM_ClassicalParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const XorGame g = random_game(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classical_value(g).value);
}

void BM_ClassicalReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const XorGame g = random_game(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::classical_value(g).value);
}

void BM_SolverParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix cost = cost_matrix(random_game(n, n, 2));
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_bilinear(cost, cfg).bias);
}

void BM_SolverReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix cost = cost_matrix(random_game(n, n, 2));
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(reference::maximize_bilinear(cost, cfg).bias);
}

}  // namespace

BENCHMARK(BM_ClassicalParallel)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassicalReference)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolverParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolverReference)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
