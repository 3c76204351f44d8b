#include "fptlat/linalg.hpp"

#include <numeric>
#include <string>

#include "fptlat/errors.hpp"

namespace fptlat {

namespace {

// Bareiss elimination in place; returns the rank. `sign` tracks row swaps.
// After the loop, for a square full-rank input, a(n-1, n-1) is the
// determinant up to `sign`.
std::size_t bareiss(IntMatrix& a, int& sign) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  sign = 1;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      a.swap_rows(piv, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

}  // namespace

Integer det(const IntMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::dimension, "det of a " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()) +
                                          " matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  if (bareiss(a, sign) < n) return 0;
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  int sign = 1;
  return bareiss(a, sign);
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!fn(idx)) return;
    // advance to the next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void require_full_column_rank(const IntMatrix& h) {
  if (h.cols() == 0 || h.rows() < h.cols()) {
    throw Error(ErrorKind::rank, "expected d >= n >= 1, got " +
                                     std::to_string(h.rows()) + "x" +
                                     std::to_string(h.cols()));
  }
  const std::size_t r = rank(h);
  if (r != h.cols()) {
    throw Error(ErrorKind::rank, "matrix has rank " + std::to_string(r) +
                                     ", expected " + std::to_string(h.cols()));
  }
}

Integer max_rank_minor(const IntMatrix& h) {
  require_full_column_rank(h);
  Integer best = 0;
  for_each_subset(h.rows(), h.cols(), [&](std::span<const std::size_t> rows) {
    Integer d = abs(det(h.select_rows(rows)));
    if (d > best) best = d;
    return true;
  });
  return best;
}

bool has_singular_rank_submatrix(const IntMatrix& h) {
  require_full_column_rank(h);
  bool singular = false;
  for_each_subset(h.rows(), h.cols(), [&](std::span<const std::size_t> rows) {
    singular = det(h.select_rows(rows)) == 0;
    return !singular;
  });
  return singular;
}

IntMatrix adjugate(const IntMatrix& b) {
  if (!b.is_square()) {
    throw Error(ErrorKind::dimension, "adjugate of a non-square matrix");
  }
  const std::size_t n = b.rows();
  if (n == 1) return IntMatrix{{1}};
  IntMatrix adj(n, n);
  std::vector<std::size_t> keep_r(n - 1), keep_c(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ij goes to adj(j, i)
      for (std::size_t r = 0, t = 0; r < n; ++r)
        if (r != i) keep_r[t++] = r;
      for (std::size_t c = 0, t = 0; c < n; ++c)
        if (c != j) keep_c[t++] = c;
      Integer minor = det(b.select_rows(keep_r).select_cols(keep_c));
      adj(j, i) = ((i + j) % 2 == 0) ? minor : Integer(-minor);
    }
  }
  return adj;
}

std::optional<RatVector> solve_rational(const IntMatrix& m,
                                        std::span<const Integer> rhs) {
  if (!m.is_square() || rhs.size() != m.rows()) {
    throw Error(ErrorKind::dimension, "solve_rational shape mismatch");
  }
  const Integer d = det(m);
  if (d == 0) return std::nullopt;
  // x = adj(m) rhs / det(m)
  const IntMatrix adj = adjugate(m);
  const IntVector num = adj * rhs;
  RatVector x(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    x[i] = Rational(num[i], d);
    x[i].canonicalize();
  }
  return x;
}

}  // namespace fptlat
