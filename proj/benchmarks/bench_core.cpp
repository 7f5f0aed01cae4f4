#include <benchmark/benchmark.h>

#include "zpd/arithmetic.hpp"
#include "zpd/duality.hpp"
#include "zpd/oscillatory.hpp"
#include "zpd/zeta.hpp"

using namespace zpd;

static void BM_HardyZ(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hardy_z(t));
}
BENCHMARK(BM_HardyZ)->Arg(100)->Arg(5000)->Arg(40000);

static void BM_FindZeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(static_cast<double>(state.range(0))));
}
BENCHMARK(BM_FindZeros)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_QuadSpot(benchmark::State& state) {
  OscIntegralSpec spec;
  spec.gamma = 2.0 * kTwoPi / 3.0 * 20.0;  // gamma* = 2
  for (auto _ : state) benchmark::DoNotOptimize(quad_I(spec, 1e-10));
}
BENCHMARK(BM_QuadSpot)->Unit(benchmark::kMicrosecond);

static void BM_PrimeSide(benchmark::State& state) {
  const auto bump = BumpFunction::canonical(1.0, 2.0);
  const Twist xi(ModularTwist(1, 3));
  const double X = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prime_side(xi, bump, X));
}
BENCHMARK(BM_PrimeSide)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_CharactersMod(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(characters_mod(state.range(0)));
}
BENCHMARK(BM_CharactersMod)->Arg(30)->Arg(210);

BENCHMARK_MAIN();
