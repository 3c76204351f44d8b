#include <benchmark/benchmark.h>

#include "fptlat/generator.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/linalg.hpp"
#include "fptlat/svp.hpp"

using namespace fptlat;

namespace {

// n, target Delta; p = 2, one extra row.
void BM_SvpDp(benchmark::State& state) {
  GenSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.d = spec.n + 1;
  spec.target_delta_max = state.range(1);
  spec.seed = 11;
  const GeneratedLattice g = gen_lattice(spec);
  const HnfForm f = hnf_normalize(g.h);
  const SvpBounds b = lemma2_bounds(m_constant(g.delta, f.m, 2, f.d(), f.n()), g.delta, f.s);
  std::size_t states = 0;
  for (auto _ : state) {
    DpStats stats;
    benchmark::DoNotOptimize(dp_solve(f, 2, g.delta, b, &stats));
    states = stats.states;
  }
  state.counters["delta"] = static_cast<double>(g.delta.get_si());
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_SvpDp)->ArgsProduct({{2, 3, 4}, {2, 4, 8}})->Unit(benchmark::kMillisecond);

void BM_SvpBrute(benchmark::State& state) {
  GenSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.d = spec.n + 1;
  spec.target_delta_max = 4;
  spec.seed = 11;
  const GeneratedLattice g = gen_lattice(spec);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_svp(g.h, 2));
}
BENCHMARK(BM_SvpBrute)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
