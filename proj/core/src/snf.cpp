#include "fptlat/snf.hpp"

#include "fptlat/errors.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

IntVector SnfDecomposition::diagonal() const {
  IntVector out(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) out[i] = s(i, i);
  return out;
}

SnfDecomposition snf(const IntMatrix& b) {
  if (!b.is_square()) throw Error(ErrorKind::dimension, "snf needs a square matrix");
  if (det(b) == 0) throw Error(ErrorKind::singular, "snf of a singular matrix");
  const std::size_t n = b.rows();
  IntMatrix a = b;
  IntMatrix p = IntMatrix::identity(n);
  IntMatrix q = IntMatrix::identity(n);

  Integer quot;
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero |entry| of the trailing block becomes the pivot
      std::size_t pi = t, pj = t;
      Integer best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (best == 0 || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            pi = i;
            pj = j;
          }
      a.swap_rows(t, pi);
      p.swap_rows(t, pi);
      a.swap_cols(t, pj);
      q.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        mpz_tdiv_q(quot.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row_multiple(i, t, -quot);
        p.add_row_multiple(i, t, -quot);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        mpz_tdiv_q(quot.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col_multiple(j, t, -quot);
        q.add_col_multiple(j, t, -quot);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: pull an offending row into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            a.add_row_multiple(t, i, 1);
            p.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      p.negate_row(t);
    }
  }
  return SnfDecomposition{std::move(a), std::move(p), std::move(q)};
}

std::optional<std::string> check_snf(const IntMatrix& b, const SnfDecomposition& dec) {
  const std::size_t n = b.rows();
  if (dec.s.rows() != n || dec.s.cols() != n || dec.p.rows() != n ||
      dec.q.rows() != n) {
    return "SNF factor shapes do not match the source";
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dec.s(i, j) != 0) return "S is not diagonal";
  Integer prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dec.s(i, i) < 1) return "S diagonal entry < 1";
    if (i + 1 < n &&
        !mpz_divisible_p(dec.s(i + 1, i + 1).get_mpz_t(), dec.s(i, i).get_mpz_t())) {
      return "S divisibility chain broken at " + std::to_string(i);
    }
    prod *= dec.s(i, i);
  }
  if (prod != abs(det(b))) return "prod(S) != |det B|";
  if (abs(det(dec.p)) != 1) return "P is not unimodular";
  if (abs(det(dec.q)) != 1) return "Q is not unimodular";
  if (dec.p * b * dec.q != dec.s) return "P * B * Q != S";
  return std::nullopt;
}

}  // namespace fptlat
