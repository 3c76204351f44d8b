#include "fptlat/hnf.hpp"

#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

IntMatrix HnfForm::assemble() const {
  IntMatrix top(k, n());
  for (std::size_t i = 0; i < k; ++i) top(i, i) = 1;
  IntMatrix mid = hstack(block_a, block_b);
  IntMatrix bottom = hstack(block_abar, block_bbar);
  return vstack(vstack(top, mid), bottom);
}

Integer HnfForm::pivot_product() const {
  Integer delta = 1;
  for (std::size_t i = 0; i < s; ++i) delta *= block_b(i, i);
  return delta;
}

IntVector HnfForm::residual_column(std::size_t j) const {
  IntVector c;
  c.reserve(s + m);
  for (std::size_t i = 0; i < s; ++i) c.push_back(block_a(i, j));
  for (std::size_t i = 0; i < m; ++i) c.push_back(block_abar(i, j));
  return c;
}

IntVector HnfForm::to_input_coeffs(const IntVector& form_coeffs) const {
  return col_transform * form_coeffs;
}

IntVector HnfForm::to_input_rows(const IntVector& form_rows) const {
  IntVector out(form_rows.size());
  for (std::size_t i = 0; i < form_rows.size(); ++i) out[row_perm[i]] = form_rows[i];
  return out;
}

HnfForm hnf_normalize(const IntMatrix& h) {
  const std::size_t d = h.rows();
  const std::size_t n = h.cols();
  if (n == 0 || d < n) {
    throw Error(ErrorKind::structure, "hnf_normalize needs d >= n >= 1, got " +
                                          std::to_string(d) + "x" +
                                          std::to_string(n));
  }

  IntMatrix w = h;
  IntMatrix u = IntMatrix::identity(n);
  std::vector<std::size_t> pivot_rows;
  std::vector<bool> is_pivot(d, false);
  std::size_t c = 0;

  Integer g, x, y, a_g, b_g;
  for (std::size_t i = 0; i < d && c < n; ++i) {
    // gcd-combine row i into column c, zeroing columns c+1..n-1
    for (std::size_t j = c + 1; j < n; ++j) {
      if (w(i, j) == 0) continue;
      if (w(i, c) == 0) {
        w.swap_cols(c, j);
        u.swap_cols(c, j);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                 w(i, c).get_mpz_t(), w(i, j).get_mpz_t());
      a_g = w(i, c) / g;
      b_g = w(i, j) / g;
      // [col_c, col_j] <- [x col_c + y col_j, -b_g col_c + a_g col_j]
      for (IntMatrix* mat : {&w, &u}) {
        for (std::size_t r = 0; r < mat->rows(); ++r) {
          Integer cc = (*mat)(r, c);
          Integer cj = (*mat)(r, j);
          (*mat)(r, c) = x * cc + y * cj;
          (*mat)(r, j) = a_g * cj - b_g * cc;
        }
      }
    }
    if (w(i, c) == 0) continue;
    if (w(i, c) < 0) {
      w.negate_col(c);
      u.negate_col(c);
    }
    // reduce earlier pivot columns into [0, pivot)
    for (std::size_t j = 0; j < c; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), w(i, j).get_mpz_t(), w(i, c).get_mpz_t());
      if (q != 0) {
        w.add_col_multiple(j, c, -q);
        u.add_col_multiple(j, c, -q);
      }
    }
    pivot_rows.push_back(i);
    is_pivot[i] = true;
    ++c;
  }
  if (c < n) {
    throw Error(ErrorKind::structure, "matrix has rank " + std::to_string(c) +
                                          " < " + std::to_string(n));
  }

  HnfForm form;
  std::vector<std::size_t> unit, big;
  for (std::size_t j = 0; j < n; ++j) {
    (w(pivot_rows[j], j) == 1 ? unit : big).push_back(j);
  }
  form.k = unit.size();
  form.s = big.size();
  form.m = d - n;

  form.col_perm = unit;
  form.col_perm.insert(form.col_perm.end(), big.begin(), big.end());
  for (std::size_t j : form.col_perm) form.row_perm.push_back(pivot_rows[j]);
  for (std::size_t i = 0; i < d; ++i)
    if (!is_pivot[i]) form.row_perm.push_back(i);

  form.col_transform = u.select_cols(form.col_perm);
  const IntMatrix f = w.select_rows(form.row_perm).select_cols(form.col_perm);
  form.block_a = f.block(form.k, 0, form.s, form.k);
  form.block_b = f.block(form.k, form.k, form.s, form.s);
  form.block_abar = f.block(n, 0, form.m, form.k);
  form.block_bbar = f.block(n, form.k, form.m, form.s);
  return form;
}

std::optional<std::string> check_hnf_form(const IntMatrix& h, const HnfForm& form) {
  const std::size_t n = form.n();
  const std::size_t d = form.d();
  if (h.rows() != d || h.cols() != n) return "form shape does not match input";
  if (form.block_a.rows() != form.s || form.block_a.cols() != form.k ||
      form.block_b.rows() != form.s || form.block_b.cols() != form.s ||
      form.block_abar.rows() != form.m || form.block_abar.cols() != form.k ||
      form.block_bbar.rows() != form.m || form.block_bbar.cols() != form.s) {
    return "block shapes inconsistent with k, s, m";
  }
  for (std::size_t i = 0; i < form.s; ++i) {
    const Integer& bii = form.block_b(i, i);
    if (bii < 2) return "B diagonal entry " + bii.get_str() + " < 2";
    for (std::size_t j = 0; j < form.s; ++j) {
      const Integer& bij = form.block_b(i, j);
      if (j > i && bij != 0) return "B is not lower triangular";
      if (j <= i && (bij < 0 || bij > bii)) return "B entry out of [0, b_ii]";
    }
    for (std::size_t j = 0; j < form.k; ++j) {
      const Integer& aij = form.block_a(i, j);
      if (aij < 0 || aij > bii) return "A entry out of [0, b_ii]";
    }
  }
  std::vector<bool> seen(d, false);
  if (form.row_perm.size() != d) return "row_perm has wrong length";
  for (std::size_t r : form.row_perm) {
    if (r >= d || seen[r]) return "row_perm is not a permutation";
    seen[r] = true;
  }
  if (abs(det(form.col_transform)) != 1) return "col_transform is not unimodular";
  if (h.select_rows(form.row_perm) * form.col_transform != form.assemble()) {
    return "H * U (row-permuted) does not reproduce the form";
  }
  return std::nullopt;
}

}  // namespace fptlat
