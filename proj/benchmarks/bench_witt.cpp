#include <benchmark/benchmark.h>

#include "greenberg/witt.hpp"

using namespace greenberg;

static void WittVerify(benchmark::State& state) {
  auto table = WittTable::make(static_cast<unsigned>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(table->verify_ghost_identities());
}
BENCHMARK(WittVerify)->Arg(2)->Arg(3);

static void PolynomialPower(benchmark::State& state) {
  auto table = WittTable::make(5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(table->sum(2).pow(5));
}
BENCHMARK(PolynomialPower);

static void GhostEval(benchmark::State& state) {
  std::vector<mpz_class> coords{3, -7, 5, 2};
  for (auto _ : state) benchmark::DoNotOptimize(ghost(coords, 5));
}
BENCHMARK(GhostEval);

BENCHMARK_MAIN();
