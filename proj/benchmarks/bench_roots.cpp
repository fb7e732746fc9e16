#include <benchmark/benchmark.h>

#include <random>

#include "tilelab/real_roots.hpp"
#include "tilelab/vieta.hpp"

namespace {

using namespace tilelab;

ComplexPoly random_poly(int degree) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(u(rng));
  return ComplexPoly(std::move(c));
}

void BM_Horner(benchmark::State& state) {
  const ComplexPoly p = random_poly(static_cast<int>(state.range(0)));
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_horner(p, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Horner)->RangeMultiplier(4)->Range(4, 256);

void BM_FindRootsCubic(benchmark::State& state) {
  const AnyPoly p = parse_poly("pi/2, -pi^2, 0, 2");
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p, Mode::Real).roots.tau());
}
BENCHMARK(BM_FindRootsCubic);

void BM_FindRootsComplex(benchmark::State& state) {
  const AnyPoly p = parse_poly("-1, 0, 0, 0, 1");
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p, Mode::Complex).roots.tau());
}
BENCHMARK(BM_FindRootsComplex);

void BM_Oracle(benchmark::State& state) {
  const ComplexPoly p = random_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_real_roots(p).tau());
}
BENCHMARK(BM_Oracle)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
