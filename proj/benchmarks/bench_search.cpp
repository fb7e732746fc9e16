#include <benchmark/benchmark.h>

#include "tilelab/cost.hpp"
#include "tilelab/search.hpp"

namespace {

using namespace tilelab;

const TileGrid& sample4() {
  static const TileGrid g = parse_grid_text("1 _ 2 4/5 6 3 8/9 10 7 11/13 14 15 12");
  return g;
}

void BM_EnumerateReachable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_reachable(n).count());
}
BENCHMARK(BM_EnumerateReachable)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveBfs(benchmark::State& state) {
  // deepest 3x3 state: both antipodes of the goal sit at depth 31
  const TileGrid g = parse_grid_text("8 6 7/2 5 4/3 _ 1");
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(g, SearchAlgorithm::Bfs).psi);
}
BENCHMARK(BM_SolveBfs)->Unit(benchmark::kMillisecond);

void BM_SolveIda(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(sample4(), SearchAlgorithm::IdaStar).psi);
}
BENCHMARK(BM_SolveIda);

void BM_Exhaust(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const TileGrid unreachable = parse_grid_text("2 1/3 _");
  for (auto _ : state) {
    CostLedger ledger;
    try {
      exhaust_sequences(unreachable, k, &ledger);
    } catch (const NotFound&) {
    }
    benchmark::DoNotOptimize(ledger.decisions());
  }
}
BENCHMARK(BM_Exhaust)->DenseRange(2, 8, 2);

void BM_InstrumentedVerify(benchmark::State& state) {
  const MoveSeq seq = MoveSeq::parse("RDDRD");
  for (auto _ : state) {
    CostLedger ledger;
    benchmark::DoNotOptimize(instrumented_verify(sample4(), seq, ledger));
  }
}
BENCHMARK(BM_InstrumentedVerify);

}  // namespace
