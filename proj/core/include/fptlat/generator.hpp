#pragma once

#include <cstdint>

#include "fptlat/ilp.hpp"
#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// SplitMix64: state += 0x9e3779b97f4a7c15, then two xor-shift-multiply
/// rounds. Portable and fully specified, so corpora reproduce anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [lo, hi] by rejection, no modulo bias.
  long uniform(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

struct GenSpec {
  std::size_t n = 2;
  std::size_t d = 2;
  long target_delta_max = 2;
  bool require_nonsingular = false;
  long entry_range = 5;
  std::uint64_t seed = 1;

  /// Throws ErrorKind::parameter unless d >= n >= 1, entry_range >= 1 and
  /// target_delta_max >= 1.
  void validate() const;
};

struct GeneratedLattice {
  IntMatrix h;
  Integer delta;  // max_rank_minor(h)
};

/// Random form-(2) skeleton with prod diag(B) <= target_delta_max, extra rows
/// kept under the same Delta, then bounded unimodular column operations and
/// row permutations / sign flips.
GeneratedLattice gen_lattice(const GenSpec& spec);

/// gen_lattice draws until no n x n row submatrix is singular.
GeneratedLattice gen_nonsingular(const GenSpec& spec);

struct GeneratedIlp {
  IlpInstance instance;
  IntVector witness;  // x0 with H x0 <= b
  Integer delta;
};

/// H from gen_nonsingular (or gen_lattice when nonsingularity is not
/// required), b = H x0 + slack, c = H^T y for y >= 0 so the LP is bounded.
GeneratedIlp gen_ilp(const GenSpec& spec);

}  // namespace fptlat
