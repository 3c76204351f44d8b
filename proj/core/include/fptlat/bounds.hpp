#pragma once

#include <cstddef>
#include <optional>

#include "fptlat/hnf.hpp"
#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// Box limits for the shortest-vector dynamic program. Every field is an
/// exact integer upper bound; over-estimation only costs time.
struct SvpBounds {
  unsigned p = 1;
  /// Upper bound on M^p, the smaller of the two shortest-norm estimates.
  Integer mp;
  /// Delta^p * (m + 1): norm^p bound from the last column of the form.
  Integer first_candidate;
  /// Ceiling of the Minkowski-type estimate raised to p.
  Integer second_candidate;
  /// M/2 <= mhalf_num / mhalf_den.
  Integer mhalf_num;
  Integer mhalf_den = 2;
  /// ||alpha||_1 <= alpha_l1 (= mp).
  Integer alpha_l1;
  /// |beta_i| <= beta_abs[i - 1]; filled by lemma2_bounds.
  IntVector beta_abs;
  /// ||x*||_1 <= 2 (1 + Delta) mp.
  Integer total_l1;
  /// ||v||_inf <= 2 Delta (1 + Delta) mp.
  Integer v_box;
  /// ||u||_inf <= Delta (3^s + 1) (1 + Delta) mp; filled by lemma2_bounds.
  Integer u_box;
};

/// Delta * (3^(s - i) + 1) / 2. i == 0 gives the bound for Abar entries.
/// Throws ErrorKind::range when i > s.
Integer lemma1_entry_bound(const Integer& delta, std::size_t s, std::size_t i);

struct Lemma1Violation {
  bool in_abar = false;  // false: Bbar
  std::size_t row = 0;
  std::size_t col = 0;
  Integer value;
  Integer bound;
};

/// True iff every Bbar/Abar entry of `form` respects lemma1_entry_bound.
struct Lemma1Report {
  bool ok = true;
  std::optional<Lemma1Violation> violation;
};
Lemma1Report verify_lemma1(const HnfForm& form, const Integer& delta);

/// Certified M^p for a d x n lattice with m extra rows. p must be >= 1.
/// Fills every field except beta_abs and u_box.
SvpBounds m_constant(const Integer& delta, std::size_t m, long p, std::size_t d,
                     std::size_t n);

/// Adds the per-coordinate beta bounds, total_l1 and u_box for a form with
/// s pivots >= 2.
SvpBounds lemma2_bounds(SvpBounds bounds, const Integer& delta, std::size_t s);

/// ceil(Delta^(3 + 2 log2 3) + log2 Delta): above this n a matrix without
/// singular rank submatrices has at most n + 1 rows.
Integer lemma3_threshold(const Integer& delta);

/// ceil(Delta^(1 + m (1 + log2 3)) + log2 Delta): above this n the
/// duplicate-column fast path is guaranteed to fire.
Integer theorem1_threshold(const Integer& delta, std::size_t m);

/// ceil(Delta^a * 3^(b log2 Delta) + log2 Delta), exact for powers of two,
/// upward-rounded otherwise.
Integer power_log_threshold(const Integer& delta, unsigned long a, unsigned long b);

}  // namespace fptlat
