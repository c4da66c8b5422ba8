#include <benchmark/benchmark.h>

#include "greenberg/local_ring.hpp"

using namespace greenberg;

static void RingMulTabled(benchmark::State& state) {
  auto A = LocalRing::parse("F3[t]/t^2");
  ring_code x = 1;
  for (auto _ : state) {
    for (ring_code a = 0; a < A->cardinality(); ++a) x = A->mul(x | 1, a);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(RingMulTabled);

static void RingMulWittEval(benchmark::State& state) {
  // large enough to fall off the precomputed-table path
  auto A = LocalRing::parse("W2(F49)");
  ring_code x = 1;
  for (auto _ : state) {
    for (ring_code a = 0; a < 64; ++a) x = A->mul(x | 1, a);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(RingMulWittEval);

static void RingInverse(benchmark::State& state) {
  auto A = LocalRing::parse("Z/8");
  for (auto _ : state) {
    for (ring_code a = 0; a < A->cardinality(); ++a)
      if (A->is_unit(a)) benchmark::DoNotOptimize(A->inv_unit(a));
  }
}
BENCHMARK(RingInverse);

static void RingConstruction(benchmark::State& state) {
  for (auto _ : state) {
    // interned: measures the cache hit path
    benchmark::DoNotOptimize(LocalRing::parse("F3[t]/t^2"));
  }
}
BENCHMARK(RingConstruction);
