#include <benchmark/benchmark.h>

#include "greenberg/flag.hpp"
#include "greenberg/transporter.hpp"

using namespace greenberg;

static void MatrixProduct3x3(benchmark::State& state) {
  auto A = LocalRing::parse("Z/8");
  Rng rng(0);
  auto gl3 = GroupPattern::general_linear(A, 3);
  Matrix g = gl3.random_element(rng), h = gl3.random_element(rng);
  for (auto _ : state) {
    g = g * h;
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(MatrixProduct3x3);

static void MatrixInverse3x3(benchmark::State& state) {
  auto A = LocalRing::parse("Z/8");
  Rng rng(0);
  auto gl3 = GroupPattern::general_linear(A, 3);
  Matrix g = gl3.random_element(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mat_inv(g));
}
BENCHMARK(MatrixInverse3x3);

static void EnumerateGL2(benchmark::State& state) {
  auto A = LocalRing::parse("F3[t]/t^2");
  auto gl2 = GroupPattern::general_linear(A, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gl2.enumerate_elements(10000000));
}
BENCHMARK(EnumerateGL2);

static void NormalizerScan(benchmark::State& state) {
  auto A = LocalRing::parse("F3[t]/t^2");
  Rng rng(0);
  PointSet G = PointSet::whole_group(GroupPattern::general_linear(A, 2));
  PointSet T =
      PointSet::from_pattern(GroupPattern::diagonal_torus(Ambient::GL, A, 2), 10000000, rng);
  ScanOptions opts;
  opts.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalizer_points(G, T, opts));
}
BENCHMARK(NormalizerScan)->Arg(1)->Arg(4);

static void FlagRecovery(benchmark::State& state) {
  auto A = LocalRing::parse("Z/8");
  auto group = GroupPattern::general_linear(A, 3);
  auto borel = GroupPattern::std_borel(Ambient::GL, A, 3);
  Rng rng(0);
  Matrix h = group.random_element(rng);
  const Matrix hi = mat_inv(h);
  std::vector<Matrix> gens;
  for (const Matrix& s : borel.generators()) gens.push_back(h * s * hi);
  GroupPattern b = borel;
  auto oracle = [b, h, hi](const Matrix& m) { return b.contains(hi * m * h); };
  PointSet hidden = PointSet::intensional(group, gens, oracle, borel.order());
  for (auto _ : state) benchmark::DoNotOptimize(recover_flag(hidden));
}
BENCHMARK(FlagRecovery);
