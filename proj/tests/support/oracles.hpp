#pragma once

// Independent reference implementations. None of them touches the normal
// forms or the bound formulas of the library.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "fptlat/int_matrix.hpp"

namespace oracle {

using fptlat::Integer;
using fptlat::IntMatrix;
using fptlat::IntVector;
using fptlat::Rational;

// Leibniz expansion over all permutations.
inline Integer perm_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? Integer(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Integer ipow(const Integer& x, unsigned p) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), Integer(abs(x)).get_mpz_t(), p);
  return r;
}

inline Integer pnorm(const IntVector& v, unsigned p) {
  Integer s = 0;
  for (const auto& x : v) s += ipow(x, p);
  return s;
}

inline IntVector mat_vec(const IntMatrix& h, const IntVector& t) {
  IntVector out(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out[i] += h(i, j) * t[j];
  return out;
}

// Smallest integer r with r^p >= x.
inline Integer iroot_ceil(const Integer& x, unsigned p) {
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), p);
  while (ipow(r, p) < x) ++r;
  return r;
}

struct SvpResult {
  Integer norm_p;
  IntVector coeffs;
};

// Exact shortest vector by Fincke-Pohst enumeration of the Gram form in
// rational arithmetic. Every t with ||Ht||_2^2 <= R is visited, where R is
// large enough (norm equivalence) to contain any vector beating the
// shortest column in l_p.
inline SvpResult fincke_pohst_svp(const IntMatrix& h, unsigned p) {
  const std::size_t n = h.cols(), d = h.rows();
  SvpResult best;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector t(n);
    t[j] = 1;
    const Integer v = pnorm(mat_vec(h, t), p);
    if (best.coeffs.empty() || v < best.norm_p) best = SvpResult{v, t};
  }

  // q(t) = sum_i diag[i] (t_i + sum_{j>i} mu[j][i] t_j)^2
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < d; ++i) g[a][b] += Rational(h(i, a) * h(i, b));
  std::vector<Rational> diag(n);
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) mu[j][i] = g[i][j] / g[i][i];
    diag[i] = g[i][i];
    for (std::size_t a = i + 1; a < n; ++a)
      for (std::size_t b = i + 1; b < n; ++b) g[a][b] -= g[a][i] * g[i][b] / g[i][i];
  }

  // ||v||_2^2 <= d^(1 - 2/p) ||v||_p^2 for p >= 2; ||v||_2 <= ||v||_1.
  auto radius = [&](const Integer& bound) {
    if (p == 1) return Integer(bound * bound);
    if (p == 2) return bound;
    Integer dd = static_cast<unsigned long>(d);
    return iroot_ceil(ipow(dd, p - 2) * bound * bound, p);
  };
  Rational limit(radius(best.norm_p));

  IntVector t(n);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level,
                                                              const Rational& used) {
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= mu[j][i] * Rational(t[j]);
    Integer mid;
    mpz_fdiv_q(mid.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
    auto visit = [&](const Integer& z) {
      const Rational off = Rational(z) - center;
      const Rational here = used + diag[i] * off * off;
      if (here > limit) return false;
      t[i] = z;
      if (i == 0) {
        if (std::any_of(t.begin(), t.end(), [](const Integer& x) { return x != 0; })) {
          const Integer v = pnorm(mat_vec(h, t), p);
          if (v < best.norm_p) {
            best = SvpResult{v, t};
            limit = Rational(radius(v));
          }
        }
      } else {
        rec(i, here);
      }
      return true;
    };
    // Walk outward from the center in both directions until q exceeds R.
    for (Integer z = mid;; --z)
      if (!visit(z)) break;
    for (Integer z = mid + 1;; ++z)
      if (!visit(z)) break;
    t[i] = 0;
  };
  rec(n, Rational(0));
  return best;
}

struct IlpResult {
  IntVector x;
  Integer objective;
};

// max c.x over H x <= b inside the integer box |x_j - center_j| <= radius.
inline std::optional<IlpResult> box_ilp(const IntMatrix& h, const IntVector& b,
                                        const IntVector& c, const std::vector<Rational>& center,
                                        const Integer& radius) {
  const std::size_t n = h.cols();
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational a = center[j] - Rational(radius), z = center[j] + Rational(radius);
    mpz_cdiv_q(lo[j].get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(hi[j].get_mpz_t(), z.get_num_mpz_t(), z.get_den_mpz_t());
    if (lo[j] > hi[j]) return std::nullopt;
  }
  std::optional<IlpResult> best;
  IntVector x = lo;
  while (true) {
    const IntVector hx = mat_vec(h, x);
    bool ok = true;
    for (std::size_t i = 0; i < h.rows(); ++i) ok = ok && hx[i] <= b[i];
    if (ok) {
      Integer obj = 0;
      for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
      if (!best || obj > best->objective) best = IlpResult{x, obj};
    }
    std::size_t j = 0;
    while (j < n && x[j] == hi[j]) x[j] = lo[j], ++j;
    if (j == n) break;
    ++x[j];
  }
  return best;
}

// Every optimum inside the box (for proximity checks that must not depend
// on which optimum a solver happens to return).
inline std::vector<IntVector> box_ilp_optima(const IntMatrix& h, const IntVector& b,
                                             const IntVector& c,
                                             const std::vector<Rational>& center,
                                             const Integer& radius, const Integer& value) {
  const std::size_t n = h.cols();
  IntVector lo(n), hi(n);
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational a = center[j] - Rational(radius), z = center[j] + Rational(radius);
    mpz_cdiv_q(lo[j].get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(hi[j].get_mpz_t(), z.get_num_mpz_t(), z.get_den_mpz_t());
    if (lo[j] > hi[j]) return out;
  }
  IntVector x = lo;
  while (true) {
    const IntVector hx = mat_vec(h, x);
    bool ok = true;
    for (std::size_t i = 0; i < h.rows(); ++i) ok = ok && hx[i] <= b[i];
    Integer obj = 0;
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
    if (ok && obj == value) out.push_back(x);
    std::size_t j = 0;
    while (j < n && x[j] == hi[j]) x[j] = lo[j], ++j;
    if (j == n) break;
    ++x[j];
  }
  return out;
}

}  // namespace oracle
