#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// Column-style Hermite normal form with unit pivots sorted first:
///
///     [ I_k   0    ]   k rows
///     [ A     B    ]   s rows, B lower triangular, diag(B) >= 2
///     [ Abar  Bbar ]   m rows
///
/// The input H relates to it through
///     H.select_rows(row_perm) * col_transform == assemble().
struct HnfForm {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t m = 0;
  IntMatrix block_a;      // s x k
  IntMatrix block_b;      // s x s
  IntMatrix block_abar;   // m x k
  IntMatrix block_bbar;   // m x s
  /// row_perm[i] is the input row placed at form row i.
  std::vector<std::size_t> row_perm;
  /// col_perm[j] is the pivot-order HNF column placed at form column j.
  /// Already folded into col_transform.
  std::vector<std::size_t> col_perm;
  /// n x n unimodular matrix.
  IntMatrix col_transform;

  std::size_t n() const { return k + s; }
  std::size_t d() const { return k + s + m; }

  /// The d x n matrix of the form.
  IntMatrix assemble() const;
  /// delta = prod of diag(B); 1 when s = 0.
  Integer pivot_product() const;
  /// Column j of the stacked (A over Abar) block, j < k.
  IntVector residual_column(std::size_t j) const;
  /// Coefficients in input coordinates for form coordinates x = (alpha, beta).
  IntVector to_input_coeffs(const IntVector& form_coeffs) const;
  /// Un-permutes a d-vector indexed by form rows into input row order.
  IntVector to_input_rows(const IntVector& form_rows) const;
};

/// Computes the form above for a d x n matrix of rank n with d >= n.
/// Throws ErrorKind::structure otherwise.
HnfForm hnf_normalize(const IntMatrix& h);

/// Checks every structural invariant of `form` against its source `h`:
/// block shapes, HNF entry ranges, |det col_transform| = 1, and the
/// reconstruction identity. Returns a description of the first violation.
std::optional<std::string> check_hnf_form(const IntMatrix& h, const HnfForm& form);

}  // namespace fptlat
