#include <doctest.h>

#include "fptlat/errors.hpp"
#include "fptlat/generator.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/instance_io.hpp"
#include "fptlat/linalg.hpp"
#include "support/oracles.hpp"

using namespace fptlat;

TEST_CASE("splitmix64 reference values") {
  // Reference stream for seed 0 of the published SplitMix64.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("uniform stays in range and hits both ends") {
  SplitMix64 rng(7);
  bool lo = false, hi = false;
  for (int i = 0; i < 2000; ++i) {
    const long v = rng.uniform(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    lo = lo || v == -3;
    hi = hi || v == 3;
  }
  CHECK(lo);
  CHECK(hi);
  CHECK(rng.uniform(5, 5) == 5);
}

TEST_CASE("spec validation") {
  GenSpec bad;
  bad.n = 3;
  bad.d = 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  GenSpec zero;
  zero.entry_range = 0;
  CHECK_THROWS_AS(zero.validate(), Error);
  GenSpec ok;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("gen_lattice properties") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = 1 + seed % 5;
    spec.d = spec.n + seed % 3;
    spec.target_delta_max = 1 + static_cast<long>(seed % 9);
    const GeneratedLattice g = gen_lattice(spec);
    REQUIRE(g.h.rows() == spec.d);
    REQUIRE(g.h.cols() == spec.n);
    REQUIRE(rank(g.h) == spec.n);
    REQUIRE(g.delta == max_rank_minor(g.h));
    REQUIRE(g.delta >= 1);
    REQUIRE(g.delta <= spec.target_delta_max);
  }
}

TEST_CASE("unit target gives a unimodular square matrix") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = spec.d = 1 + seed % 4;
    spec.target_delta_max = 1;
    REQUIRE(abs(oracle::perm_det(gen_lattice(spec).h)) == 1);
  }
}

TEST_CASE("gen_nonsingular has no singular rank submatrix") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = 1 + seed % 3;
    spec.d = spec.n + seed % 2;
    spec.target_delta_max = 2 + static_cast<long>(seed % 4);
    spec.require_nonsingular = true;
    const GeneratedLattice g = gen_nonsingular(spec);
    // Every n-row subset checked with the permutation determinant.
    for_each_subset(g.h.rows(), g.h.cols(), [&](std::span<const std::size_t> rows) {
      REQUIRE(oracle::perm_det(g.h.select_rows(rows)) != 0);
      return true;
    });
  }
}

TEST_CASE("gen_ilp is feasible, bounded and deterministic") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = 1 + seed % 3;
    spec.d = spec.n + seed % 2;
    spec.target_delta_max = 4;
    spec.entry_range = 3;
    spec.require_nonsingular = true;
    const GeneratedIlp g = gen_ilp(spec);
    const IntVector hx = oracle::mat_vec(g.instance.h, g.witness);
    for (std::size_t i = 0; i < hx.size(); ++i) REQUIRE(hx[i] <= g.instance.b[i]);
    REQUIRE(solve_lp_relaxation(g.instance).status == LpStatus::optimal);

    const GeneratedIlp again = gen_ilp(spec);
    REQUIRE(again.instance.h == g.instance.h);
    REQUIRE(again.instance.b == g.instance.b);
    REQUIRE(again.instance.c == g.instance.c);
  }
}

TEST_CASE("same seed, same bytes") {
  GenSpec spec;
  spec.n = 3;
  spec.d = 4;
  spec.target_delta_max = 5;
  spec.seed = 99;
  auto text = [&] { return serialize_instance(InstanceFile{gen_lattice(spec).h, 2, {}, {}}); };
  const std::string a = text();
  CHECK(a == text());
  spec.seed = 100;
  CHECK(a != text());
}
