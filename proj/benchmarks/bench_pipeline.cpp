#include <benchmark/benchmark.h>

#include "rsconn/generators.hpp"

using namespace rsconn;

static void BM_CharPoly(benchmark::State& state) {
  Rng rng(1);
  const RMatrix a = random_split_matrix(rng, static_cast<int>(state.range(0)), 3, shear_pool());
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPoly)->DenseRange(2, 6, 2);

static void BM_Jordan(benchmark::State& state) {
  Rng rng(2);
  const RMatrix a = random_split_matrix(rng, static_cast<int>(state.range(0)), 3, shear_pool());
  for (auto _ : state) benchmark::DoNotOptimize(jordan_decomposition_over_R(a));
}
BENCHMARK(BM_Jordan)->DenseRange(2, 6, 2);

static void BM_ShearNormalize(benchmark::State& state) {
  Rng rng(3);
  const Connection c = random_log_connection(rng, static_cast<int>(state.range(0)), 2, shear_pool(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(shear_normalize(c));
}
BENCHMARK(BM_ShearNormalize)->DenseRange(2, 4, 1);

static void BM_EulerForm(benchmark::State& state) {
  Rng rng(4);
  const Connection c = random_log_connection(rng, 3, 2, window_pool(), 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(euler_form(c, n));
}
BENCHMARK(BM_EulerForm)->Arg(8)->Arg(12)->Arg(24);

static void BM_HomSpace(benchmark::State& state) {
  Rng rng(5);
  const EndObject src{random_split_matrix(rng, 3, 2, window_pool())};
  const EndObject dst{random_split_matrix(rng, 3, 2, window_pool())};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hom_space(src, dst, -n, n));
}
BENCHMARK(BM_HomSpace)->Arg(6)->Arg(12);

static void BM_Algebraize(benchmark::State& state) {
  const TwistedInstance inst = gen_twisted(6, static_cast<int>(state.range(0)), 2, 12);
  for (auto _ : state) benchmark::DoNotOptimize(algebraize(inst.conn, 12));
}
BENCHMARK(BM_Algebraize)->DenseRange(2, 4, 1);

BENCHMARK_MAIN();
