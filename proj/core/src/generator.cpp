#include "fptlat/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long SplitMix64::uniform(long lo, long hi) {
  if (lo > hi) throw Error(ErrorKind::parameter, "empty uniform range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

void GenSpec::validate() const {
  if (n < 1 || d < n) {
    throw Error(ErrorKind::parameter, "need d >= n >= 1, got n = " + std::to_string(n) +
                                          ", d = " + std::to_string(d));
  }
  if (entry_range < 1) throw Error(ErrorKind::parameter, "entry_range must be >= 1");
  if (target_delta_max < 1) throw Error(ErrorKind::parameter, "target_delta_max must be >= 1");
}

namespace {

constexpr int kRowAttempts = 200;
constexpr int kNonsingularAttempts = 2000;

IntMatrix skeleton(SplitMix64& rng, const GenSpec& spec) {
  const std::size_t n = spec.n;
  std::vector<long> pivots;
  long left = spec.target_delta_max;
  for (std::size_t i = 0; i < n; ++i) {
    if (left >= 2 && rng.coin()) {
      const long p = rng.uniform(2, left);
      pivots.push_back(p);
      left /= p;
    }
  }
  const std::size_t s = pivots.size(), k = n - s;
  IntMatrix f(n, n);
  for (std::size_t i = 0; i < k; ++i) f(i, i) = 1;
  for (std::size_t i = 0; i < s; ++i) {
    const long b = pivots[i];
    for (std::size_t j = 0; j < k + i; ++j) f(k + i, j) = rng.uniform(0, b - 1);
    f(k + i, k + i) = b;
  }
  return f;
}

IntVector random_row(SplitMix64& rng, std::size_t n, long range) {
  IntVector r(n);
  for (auto& v : r) v = rng.uniform(-range, range);
  return r;
}

IntMatrix append_row(const IntMatrix& h, const IntVector& row) {
  return vstack(h, IntMatrix(1, row.size(), row));
}

void scramble(SplitMix64& rng, IntMatrix& h, long range) {
  const std::size_t n = h.cols();
  const std::size_t ops = n > 1 ? static_cast<std::size_t>(rng.uniform(0, 2 * static_cast<long>(n))) : 0;
  for (std::size_t t = 0; t < ops; ++t) {
    const auto dst = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    auto src = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
    if (src >= dst) ++src;
    long mult = rng.uniform(-3, 2);
    if (mult >= 0) ++mult;
    IntMatrix trial = h;
    trial.add_col_multiple(dst, src, mult);
    if (trial.max_abs() <= std::max<long>(range, h.max_abs().get_si())) h = std::move(trial);
  }
  for (std::size_t j = n; j > 1; --j) {
    const auto o = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(j) - 1));
    h.swap_cols(j - 1, o);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (rng.coin()) h.negate_col(j);
  for (std::size_t i = h.rows(); i > 1; --i) {
    const auto o = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1));
    h.swap_rows(i - 1, o);
  }
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (rng.coin()) h.negate_row(i);
}

GeneratedLattice draw_lattice(SplitMix64& rng, const GenSpec& spec) {
  IntMatrix h = skeleton(rng, spec);
  const Integer target = spec.target_delta_max;
  for (std::size_t extra = spec.n; extra < spec.d; ++extra) {
    bool placed = false;
    for (int attempt = 0; attempt < kRowAttempts && !placed; ++attempt) {
      IntMatrix trial = append_row(h, random_row(rng, spec.n, spec.entry_range));
      if (max_rank_minor(trial) <= target) {
        h = std::move(trial);
        placed = true;
      }
    }
    if (!placed) {
      // A copy of an existing row never raises Delta.
      const auto src = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(spec.n) - 1));
      h = append_row(h, h.row(src));
    }
  }
  scramble(rng, h, spec.entry_range);
  GeneratedLattice out{h, max_rank_minor(h)};
  return out;
}

GeneratedLattice draw_nonsingular(SplitMix64& rng, const GenSpec& spec) {
  for (int attempt = 0; attempt < kNonsingularAttempts; ++attempt) {
    GeneratedLattice g = draw_lattice(rng, spec);
    if (!has_singular_rank_submatrix(g.h)) return g;
  }
  throw Error(ErrorKind::generation,
              "no matrix without singular n x n submatrices after " +
                  std::to_string(kNonsingularAttempts) + " attempts");
}

}  // namespace

GeneratedLattice gen_lattice(const GenSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  return draw_lattice(rng, spec);
}

GeneratedLattice gen_nonsingular(const GenSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  return draw_nonsingular(rng, spec);
}

GeneratedIlp gen_ilp(const GenSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  GeneratedLattice lat = spec.require_nonsingular ? draw_nonsingular(rng, spec)
                                                  : draw_lattice(rng, spec);
  GeneratedIlp out;
  out.delta = lat.delta;
  out.witness = random_row(rng, spec.n, spec.entry_range);
  const IntVector hx = lat.h * out.witness;
  for (std::size_t i = 0; i < spec.d; ++i) out.instance.b.push_back(hx[i] + rng.uniform(0, spec.entry_range));
  IntVector y(spec.d);
  bool any = false;
  for (auto& v : y) {
    v = rng.uniform(0, 2);
    any = any || v != 0;
  }
  if (!any) y[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(spec.d) - 1))] = 1;
  out.instance.c = lat.h.transpose() * y;
  out.instance.h = std::move(lat.h);
  return out;
}

}  // namespace fptlat
