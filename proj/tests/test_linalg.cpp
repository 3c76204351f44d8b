#include <doctest.h>

#include "fptlat/errors.hpp"
#include "fptlat/generator.hpp"
#include "fptlat/linalg.hpp"
#include "support/oracles.hpp"

using namespace fptlat;

namespace {

IntMatrix random_matrix(SplitMix64& rng, std::size_t r, std::size_t c, long range) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-range, range);
  return m;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::internal;
}

}  // namespace

TEST_CASE("det examples") {
  CHECK(det(IntMatrix{{1, 0}, {0, 2}}) == 2);
  CHECK(det(IntMatrix{{1, 0}, {0, 1}}) == 1);
  CHECK(det(IntMatrix{{2, 1}, {1, 2}}) == 3);
  CHECK(det(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(kind_of([] { det(IntMatrix{{1, 2}}); }) == ErrorKind::dimension);
}

TEST_CASE("det agrees with permutation expansion") {
  SplitMix64 rng(11);
  for (int t = 0; t < 1200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const IntMatrix m = random_matrix(rng, n, n, 3);
    REQUIRE(det(m) == oracle::perm_det(m));
  }
}

TEST_CASE("det of large entries stays exact") {
  IntMatrix m{{1, 2}, {3, 4}};
  m(0, 0) = Integer("123456789012345678901234567890");
  CHECK(det(m) == Integer("493827156049382715604938271560") - 6);
}

TEST_CASE("max_rank_minor examples") {
  CHECK(max_rank_minor(IntMatrix::identity(2)) == 1);
  CHECK(max_rank_minor(IntMatrix{{1, 0}, {0, 2}, {1, 1}}) == 2);
  CHECK(max_rank_minor(IntMatrix{{2}, {-1}}) == 2);
  CHECK(kind_of([] { max_rank_minor(IntMatrix{{1, 2}, {2, 4}}); }) == ErrorKind::rank);
}

TEST_CASE("has_singular_rank_submatrix examples") {
  CHECK(has_singular_rank_submatrix(IntMatrix{{1, 0}, {0, 1}, {-1, 0}}));
  CHECK_FALSE(has_singular_rank_submatrix(IntMatrix{{2, 1}, {1, 3}}));
  CHECK_FALSE(has_singular_rank_submatrix(IntMatrix{{1, 0}, {0, 1}, {1, 1}}));
  CHECK(kind_of([] { has_singular_rank_submatrix(IntMatrix{{0}, {0}}); }) == ErrorKind::rank);
}

TEST_CASE("adjugate examples") {
  CHECK(adjugate(IntMatrix::identity(3)) == IntMatrix::identity(3));
  CHECK(adjugate(IntMatrix{{2, 0}, {1, 3}}) == IntMatrix{{3, 0}, {-1, 2}});
  CHECK(adjugate(IntMatrix{{5}}) == IntMatrix{{1}});
  CHECK(kind_of([] { adjugate(IntMatrix{{1, 2}}); }) == ErrorKind::dimension);
}

TEST_CASE("adjugate satisfies B adj(B) = det(B) I") {
  SplitMix64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    const IntMatrix b = random_matrix(rng, n, n, 9);
    const Integer dt = det(b);
    REQUIRE(b * adjugate(b) == dt * IntMatrix::identity(n));
    REQUIRE(adjugate(b) * b == dt * IntMatrix::identity(n));
  }
}

TEST_CASE("rank and solve_rational") {
  CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(IntMatrix{{1, 0}, {0, 2}, {1, 1}}) == 2);
  const IntVector rhs{Integer(3), Integer(1)};
  auto x = solve_rational(IntMatrix{{2, 0}, {0, 1}}, rhs);
  REQUIRE(x);
  CHECK((*x)[0] == Rational(3, 2));
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_rational(IntMatrix{{1, 2}, {2, 4}}, rhs));
}

TEST_CASE("for_each_subset visits C(n, k) subsets in order") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_subset(4, 2, [&](std::span<const std::size_t> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  REQUIRE(seen.size() == 6);
  CHECK(seen.front() == std::vector<std::size_t>{0, 1});
  CHECK(seen.back() == std::vector<std::size_t>{2, 3});
}
