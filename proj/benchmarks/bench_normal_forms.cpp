#include <benchmark/benchmark.h>

#include "fptlat/generator.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/linalg.hpp"
#include "fptlat/snf.hpp"

using namespace fptlat;

namespace {

IntMatrix sample(std::size_t n, std::size_t extra, std::uint64_t seed) {
  GenSpec spec;
  spec.n = n;
  spec.d = n + extra;
  spec.target_delta_max = 16;
  spec.entry_range = 9;
  spec.seed = seed;
  return gen_lattice(spec).h;
}

void BM_Hnf(benchmark::State& state) {
  const IntMatrix h = sample(static_cast<std::size_t>(state.range(0)), 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(hnf_normalize(h));
}
BENCHMARK(BM_Hnf)->DenseRange(2, 8, 2);

void BM_Snf(benchmark::State& state) {
  const IntMatrix h = sample(static_cast<std::size_t>(state.range(0)), 0, 8);
  for (auto _ : state) benchmark::DoNotOptimize(snf(h));
}
BENCHMARK(BM_Snf)->DenseRange(2, 8, 2);

void BM_MaxRankMinor(benchmark::State& state) {
  const IntMatrix h = sample(static_cast<std::size_t>(state.range(0)), 2, 9);
  for (auto _ : state) benchmark::DoNotOptimize(max_rank_minor(h));
}
BENCHMARK(BM_MaxRankMinor)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
