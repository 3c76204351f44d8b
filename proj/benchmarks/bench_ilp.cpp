#include <benchmark/benchmark.h>

#include "fptlat/generator.hpp"
#include "fptlat/ilp.hpp"

using namespace fptlat;

namespace {

IlpInstance sample(long n, long delta) {
  GenSpec spec;
  spec.n = static_cast<std::size_t>(n);
  spec.d = spec.n + 1;
  spec.target_delta_max = delta;
  spec.entry_range = 3;
  spec.require_nonsingular = true;
  spec.seed = 21;
  return gen_ilp(spec).instance;
}

void BM_IlpGroup(benchmark::State& state) {
  const IlpInstance inst = sample(state.range(0), state.range(1));
  std::size_t states = 0;
  for (auto _ : state) {
    const IlpReport rep = solve_ilp(inst, {IlpOptions::Method::group});
    states = rep.stats.states;
  }
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_IlpGroup)->ArgsProduct({{1, 2, 3}, {2, 4, 6}})->Unit(benchmark::kMillisecond);

void BM_IlpBrute(benchmark::State& state) {
  const IlpInstance inst = sample(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_ilp(inst, {IlpOptions::Method::brute}));
}
BENCHMARK(BM_IlpBrute)->ArgsProduct({{1, 2, 3}, {2, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
