#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "fptlat/bounds.hpp"
#include "fptlat/errors.hpp"
#include "fptlat/generator.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/linalg.hpp"
#include "fptlat/svp.hpp"
#include "support/oracles.hpp"

using namespace fptlat;

namespace {

IntMatrix random_full_rank(SplitMix64& rng, std::size_t d, std::size_t n, long range) {
  while (true) {
    IntMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-range, range);
    if (rank(m) == n) return m;
  }
}

SvpBounds bounds_for(const HnfForm& f, const Integer& delta, unsigned p) {
  return lemma2_bounds(m_constant(delta, f.m, p, f.d(), f.n()), delta, f.s);
}

HnfForm square_form(std::size_t k, const IntMatrix& a, const IntMatrix& b) {
  HnfForm f;
  f.k = k;
  f.s = b.rows();
  f.m = 0;
  f.block_a = a;
  f.block_b = b;
  f.block_abar = IntMatrix(0, k);
  f.block_bbar = IntMatrix(0, f.s);
  for (std::size_t i = 0; i < f.d(); ++i) f.row_perm.push_back(i);
  for (std::size_t i = 0; i < f.n(); ++i) f.col_perm.push_back(i);
  f.col_transform = IntMatrix::identity(f.n());
  return f;
}

// Rows of the form below the identity, as (alpha coefficients, beta coefficients).
Integer row_value(const HnfForm& f, std::size_t r, const IntVector& alpha, const IntVector& beta) {
  Integer v = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    v += (r < f.s ? f.block_a(r, i) : f.block_abar(r - f.s, i)) * alpha[i];
  for (std::size_t i = 0; i < beta.size(); ++i)
    v += (r < f.s ? f.block_b(r, i) : f.block_bbar(r - f.s, i)) * beta[i];
  return v;
}

// Odometer over integer vectors with |x_i| <= cap_i and ||x||_1 <= budget.
void for_each_bounded(const std::vector<long>& caps, long budget,
                      const std::function<void(const IntVector&)>& fn) {
  const std::size_t n = caps.size();
  std::vector<long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -caps[i];
  while (true) {
    long l1 = 0;
    for (long v : x) l1 += v < 0 ? -v : v;
    if (l1 <= budget) {
      IntVector out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = x[i];
      fn(out);
    }
    std::size_t i = 0;
    while (i < n && x[i] == caps[i]) x[i] = -caps[i], ++i;
    if (i == n) return;
    ++x[i];
  }
}

// sigma(l, w, C): alpha_1..alpha_l free (not all zero), rest zero.
Integer direct_sigma(const HnfForm& f, unsigned p, std::size_t l, const std::vector<long>& w,
                     long budget) {
  Integer best = -1;
  std::vector<long> caps(l, budget);
  for_each_bounded(caps, budget, [&](const IntVector& a) {
    if (std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; })) return;
    IntVector alpha(f.k);
    std::copy(a.begin(), a.end(), alpha.begin());
    Integer v = oracle::pnorm(alpha, p);
    for (std::size_t r = 0; r < f.s + f.m; ++r)
      v += oracle::ipow(w[r] + row_value(f, r, alpha, IntVector(f.s)), p);
    if (best < 0 || v < best) best = v;
  });
  return best;
}

// sigma_bar(l, w, C): beta_1..beta_l clipped to beta_abs, then alpha with
// ||alpha||_1 <= min(C - ||beta||_1, Mp).
Integer direct_sigma_bar(const HnfForm& f, unsigned p, const SvpBounds& b, std::size_t l,
                         const std::vector<long>& w, long budget) {
  Integer best = -1;
  std::vector<long> bcaps(l);
  for (std::size_t i = 0; i < l; ++i) bcaps[i] = std::min(budget, b.beta_abs[i].get_si());
  for_each_bounded(bcaps, budget, [&](const IntVector& bt) {
    long used = 0;
    for (const auto& x : bt) used += std::labs(x.get_si());
    const long left = std::min(budget - used, b.mp.get_si());
    IntVector beta(f.s);
    std::copy(bt.begin(), bt.end(), beta.begin());
    const bool beta_zero = used == 0;
    for_each_bounded(std::vector<long>(f.k, std::max(left, 0L)), std::max(left, 0L),
                     [&](const IntVector& alpha) {
                       const Integer a1 = oracle::pnorm(alpha, 1);
                       if (beta_zero && a1 == 0) return;
                       Integer v = oracle::pnorm(alpha, p);
                       for (std::size_t r = 0; r < f.s + f.m; ++r)
                         v += oracle::ipow(w[r] + row_value(f, r, alpha, beta), p);
                       if (best < 0 || v < best) best = v;
                     });
  });
  return best;
}

std::int64_t value_or_inf(const Integer& v) {
  return v < 0 ? DpValue::kInfinity : v.get_si();
}

}  // namespace

TEST_CASE("fast path examples") {
  const HnfForm id = hnf_normalize(IntMatrix::identity(3));
  auto a = fast_path(id, 2, 1);
  REQUIRE(a);
  CHECK(a->norm_p == 1);
  CHECK(a->method == SvpMethod::fast_path);

  IntMatrix d = IntMatrix::identity(4);
  d(3, 3) = 2;
  auto b = fast_path(hnf_normalize(d), 2, 2);
  REQUIRE(b);
  CHECK(b->norm_p == 1);
  CHECK(b->coeffs == IntVector{Integer(1), Integer(0), Integer(0), Integer(0)});

  const IntMatrix h{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 2, 3}};
  auto c = fast_path(hnf_normalize(h), 2, 3);
  REQUIRE(c);
  CHECK(c->norm_p == 2);
  CHECK_FALSE(check_svp_solution(h, 2, *c));
  CHECK(brute_force_svp(h, 2).norm_p == 2);

  CHECK_FALSE(fast_path(hnf_normalize(IntMatrix{{2, 1}, {0, 3}}), 2, 6));
}

TEST_CASE("dp examples") {
  auto run = [](const IntMatrix& h, unsigned p) {
    return solve_svp(SvpInstance{h, static_cast<long>(p)}, {SvpOptions::Method::dp}).solution;
  };
  CHECK(run(IntMatrix::identity(2), 2).norm_p == 1);
  CHECK(run(IntMatrix{{1, 0}, {0, 2}}, 2).norm_p == 1);
  const SvpSolution a = run(IntMatrix{{2, 1}, {0, 3}}, 2);
  CHECK(a.norm_p == 4);
  CHECK(a.method == SvpMethod::dp);
  CHECK(abs(a.coeffs[0]) == 1);
  CHECK(a.coeffs[1] == 0);
  // t = (1, -1) gives (1, 1), shorter than the pure-beta vector (0, 2).
  const SvpSolution b = run(IntMatrix{{1, 0}, {3, 2}}, 2);
  CHECK(b.norm_p == 2);
  CHECK(oracle::fincke_pohst_svp(IntMatrix{{1, 0}, {3, 2}}, 2).norm_p == 2);
  CHECK(run(IntMatrix{{1, 0}, {1, 2}}, 1).norm_p == 2);
  CHECK(run(IntMatrix{{1, 0}, {1, 2}}, 2).norm_p == 2);
  CHECK(brute_force_svp(IntMatrix::identity(3), 1).norm_p == 1);
  CHECK(brute_force_svp(IntMatrix{{2, 1}, {0, 3}}, 2).norm_p == 4);
}

TEST_CASE("sigma_base examples") {
  SUBCASE("a = (1), v = (-1), C = 1, p = 1") {
    const HnfForm f = square_form(1, IntMatrix{{1}}, IntMatrix{{2}});
    SvpDp dp(f, 1, 2, bounds_for(f, 2, 1));
    const std::int64_t v[] = {-1};
    const DpValue r = dp.sigma_base(v, {}, 1);
    CHECK(r.exact);
    CHECK(r.value == 1);
    CHECK(r.choice == 1);
  }
  SUBCASE("a = (2), v = (0), C = 2, p = 2") {
    const HnfForm f = square_form(1, IntMatrix{{2}}, IntMatrix{{3}});
    SvpDp dp(f, 2, 3, bounds_for(f, 3, 2));
    const std::int64_t v[] = {0};
    CHECK(dp.sigma_base(v, {}, 2).value == 5);
  }
  SUBCASE("zero column, C = 1, p = 1") {
    const HnfForm f = square_form(1, IntMatrix{{0}}, IntMatrix{{2}});
    SvpDp dp(f, 1, 2, bounds_for(f, 2, 1));
    const std::int64_t v[] = {0};
    CHECK(dp.sigma_base(v, {}, 1).value == 1);
    CHECK(dp.sigma(1, v, {}, 1).value == 1);
  }
  SUBCASE("two zero columns at level 2") {
    const HnfForm f = square_form(2, IntMatrix{{0, 0}}, IntMatrix{{2}});
    SvpDp dp(f, 1, 2, bounds_for(f, 2, 1));
    const std::int64_t v[] = {0};
    CHECK(dp.sigma(2, v, {}, 1).value == 1);
  }
  SUBCASE("exhausted budget leaves only the closing term") {
    const HnfForm f = square_form(2, IntMatrix{{1, 1}}, IntMatrix{{2}});
    SvpDp dp(f, 1, 2, bounds_for(f, 2, 1));
    const std::int64_t v[] = {5};
    // |z| = 1 uses the whole budget: 1 + |5 - 1|, no room for alpha_1.
    CHECK(dp.sigma(2, v, {}, 1).value == 5);
  }
}

TEST_CASE("sigma and sigma_bar agree with direct enumeration") {
  GenSpec spec;
  spec.entry_range = 3;
  SplitMix64 rng(41);
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    spec.seed = 4100 + t;
    spec.n = static_cast<std::size_t>(rng.uniform(2, 3));
    spec.d = spec.n + static_cast<std::size_t>(rng.uniform(0, 1));
    spec.target_delta_max = rng.uniform(2, 4);
    const auto p = static_cast<unsigned>(rng.uniform(1, 2));
    const GeneratedLattice g = gen_lattice(spec);
    const HnfForm f = hnf_normalize(g.h);
    if (f.k == 0 || f.s == 0) continue;
    const SvpBounds b = bounds_for(f, g.delta, p);
    SvpDp dp(f, p, g.delta, b);
    for (int q = 0; q < 4; ++q) {
      std::vector<long> w(f.s + f.m);
      for (auto& x : w) x = rng.uniform(-3, 3);
      const std::vector<std::int64_t> v(w.begin(), w.begin() + static_cast<long>(f.s));
      const std::vector<std::int64_t> u(w.begin() + static_cast<long>(f.s), w.end());
      const long budget = rng.uniform(1, 4);
      for (std::size_t l = 1; l <= f.k; ++l) {
        const DpValue got = dp.sigma(l, v, u, budget);
        CHECK(got.exact);
        CHECK(got.value == value_or_inf(direct_sigma(f, p, l, w, budget)));
      }
      for (std::size_t l = 1; l <= f.s; ++l) {
        const DpValue got = dp.sigma_bar(l, v, u, budget);
        CHECK(got.value == value_or_inf(direct_sigma_bar(f, p, b, l, w, budget)));
      }
      ++compared;
    }
  }
  CHECK(compared >= 20);
}

TEST_CASE("sigma is non-increasing in the budget") {
  SplitMix64 rng(42);
  std::size_t checked = 0;
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto d = n + static_cast<std::size_t>(rng.uniform(0, 1));
    const IntMatrix h = random_full_rank(rng, d, n, 4);
    const Integer delta = max_rank_minor(h);
    const HnfForm f = hnf_normalize(h);
    if (fast_path(f, 2, delta)) continue;
    const SvpBounds b = bounds_for(f, delta, 2);
    SvpDp dp(f, 2, delta, b);
    dp.solve();
    std::vector<DpKey> keys;
    dp.for_each_state([&](const DpKey& key, const DpValue& val) {
      if (val.exact && keys.size() < 40) keys.push_back(key);
    });
    for (const DpKey& key : keys) {
      auto at = [&](std::int64_t c) {
        return key.phase == DpPhase::sigma ? dp.sigma(key.level, key.v, key.u, c).value
                                           : dp.sigma_bar(key.level, key.v, key.u, c).value;
      };
      const std::int64_t here = at(key.budget);
      CHECK(at(key.budget + 1) <= here);
      if (key.budget > 1) CHECK(at(key.budget - 1) >= here);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("dp matches the lattice oracle on random instances") {
  SplitMix64 rng(43);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 5));
    const auto d = n + static_cast<std::size_t>(rng.uniform(0, 2));
    const long p = rng.uniform(1, 3);
    const IntMatrix h = random_full_rank(rng, d, n, 5);
    const SvpReport rep = solve_svp(SvpInstance{h, p}, {SvpOptions::Method::dp});
    const oracle::SvpResult want = oracle::fincke_pohst_svp(h, static_cast<unsigned>(p));
    REQUIRE(rep.solution.norm_p == want.norm_p);
    // Certificate recomputed here.
    REQUIRE(oracle::mat_vec(h, rep.solution.coeffs) == rep.solution.vector);
    REQUIRE(oracle::pnorm(rep.solution.vector, static_cast<unsigned>(p)) == rep.solution.norm_p);
  }
}

TEST_CASE("fast path optimality") {
  SplitMix64 rng(44);
  int fired = 0;
  for (int t = 0; t < 80; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 5));
    const auto d = n + static_cast<std::size_t>(rng.uniform(0, 1));
    const IntMatrix h = random_full_rank(rng, d, n, 2);
    const HnfForm f = hnf_normalize(h);
    for (unsigned p = 1; p <= 3; ++p) {
      auto sol = fast_path(f, p, max_rank_minor(h));
      if (!sol) continue;
      ++fired;
      REQUIRE_FALSE(check_svp_solution(h, p, *sol));
      REQUIRE(oracle::fincke_pohst_svp(h, p).norm_p == sol->norm_p);
    }
  }
  CHECK(fired > 20);
}

TEST_CASE("row permutation leaves the optimum unchanged") {
  SplitMix64 rng(45);
  for (int t = 0; t < 25; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto d = n + static_cast<std::size_t>(rng.uniform(0, 2));
    const long p = rng.uniform(1, 3);
    const IntMatrix h = random_full_rank(rng, d, n, 5);
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = d; i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);
    const Integer a = solve_svp(SvpInstance{h, p}).solution.norm_p;
    const Integer b = solve_svp(SvpInstance{h.select_rows(perm), p}).solution.norm_p;
    REQUIRE(a == b);
  }
}

TEST_CASE("brute force radius is sufficient") {
  SplitMix64 rng(46);
  for (int t = 0; t < 25; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 3));
    const auto d = n + static_cast<std::size_t>(rng.uniform(0, 1));
    const auto p = static_cast<unsigned>(rng.uniform(1, 3));
    const IntMatrix h = random_full_rank(rng, d, n, 4);
    const HnfForm f = hnf_normalize(h);
    const Integer delta = max_rank_minor(h);
    const Integer radius = bounds_for(f, delta, p).total_l1;
    REQUIRE(brute_force_svp(h, p, radius).norm_p == brute_force_svp(h, p, radius + 5).norm_p);
  }
}

TEST_CASE("dispatch") {
  // Delta = 2, k = 3 > theorem-1 threshold 2^1 + 1 - 1: a duplicate column must exist.
  const IntMatrix h{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 2}};
  CHECK(Integer(static_cast<long>(h.cols())) > theorem1_threshold(max_rank_minor(h), 0));
  const SvpReport a = solve_svp(SvpInstance{h, 2});
  CHECK(a.solution.method == SvpMethod::fast_path);
  CHECK(a.solution.norm_p == 2);

  const SvpReport b = solve_svp(SvpInstance{IntMatrix{{2, 1}, {0, 3}}, 2});
  CHECK(b.solution.method == SvpMethod::dp);

  const SvpReport c = solve_svp(SvpInstance{h, 2}, {SvpOptions::Method::brute});
  CHECK(c.solution.method == SvpMethod::brute);
  CHECK(c.solution.norm_p == 2);

  try {
    solve_svp(SvpInstance{IntMatrix{{2, 1}, {0, 3}}, 2}, {SvpOptions::Method::fast_path});
    FAIL("expected unsupported_shape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_shape);
  }
  CHECK_THROWS_AS(solve_svp(SvpInstance{IntMatrix{{1, 2}, {2, 4}}, 2}), Error);
  CHECK_THROWS_AS(solve_svp(SvpInstance{IntMatrix::identity(2), 0}), Error);
}

TEST_CASE("dp capacity is enforced") {
  const IntMatrix h{{5, 2, 1}, {-3, 4, 2}, {1, -1, 5}};
  const Integer delta = max_rank_minor(h);
  const HnfForm f = hnf_normalize(h);
  SvpDp dp(f, 2, delta, bounds_for(f, delta, 2), 3);
  try {
    dp.solve();
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
}
