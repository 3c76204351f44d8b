#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer det(const IntMatrix& m);

/// Exact rank, fraction-free elimination on a copy.
std::size_t rank(const IntMatrix& m);

/// Calls `fn` with every k-subset of {0..n-1} in lexicographic order.
/// Stops early when `fn` returns false.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(std::span<const std::size_t>)>& fn);

/// Largest |det| over all n-row submatrices of a d x n matrix of rank n.
/// Enumerates all C(d, n) row subsets.
Integer max_rank_minor(const IntMatrix& h);

/// True iff some n x n row submatrix of the rank-n matrix `h` is singular.
bool has_singular_rank_submatrix(const IntMatrix& h);

/// Classical adjoint: b * adjugate(b) == det(b) * I.
IntMatrix adjugate(const IntMatrix& b);

/// Solves m x = rhs exactly over the rationals; nullopt if m is singular.
std::optional<RatVector> solve_rational(const IntMatrix& m,
                                        std::span<const Integer> rhs);

/// Throws a rank error unless `h` is d x n with d >= n >= 1 and rank n.
void require_full_column_rank(const IntMatrix& h);

}  // namespace fptlat
