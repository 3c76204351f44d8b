#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fptlat/bounds.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/int_matrix.hpp"

namespace fptlat {

enum class SvpMethod { fast_path, dp, brute };

std::string_view to_string(SvpMethod m);
SvpMethod svp_method_from_string(std::string_view s);

/// min ||H t||_p^p over nonzero integer t.
struct SvpInstance {
  IntMatrix h;
  long p = 2;

  /// Throws unless H is d x n, d >= n >= 1, rank n, and p >= 1.
  void validate() const;
};

struct SvpSolution {
  IntVector coeffs;  // t, in input coordinates
  IntVector vector;  // H t
  Integer norm_p;    // sum |(H t)_i|^p
  SvpMethod method = SvpMethod::dp;
};

/// Recomputes H t and its norm; nullopt when the certificate holds.
std::optional<std::string> check_svp_solution(const IntMatrix& h, unsigned p,
                                              const SvpSolution& sol);

/// Zero or duplicate column in (A over Abar): returns the provably optimal
/// vector of norm^p 1 or 2, else nothing.
std::optional<SvpSolution> fast_path(const HnfForm& form, unsigned p,
                                     const Integer& delta);

// ---------------------------------------------------------------------------
// Dynamic program over sigma(l, v, u, C) and sigma_bar(l, v, u, C).

enum class DpPhase : std::uint8_t { sigma, sigma_bar };

struct DpKey {
  DpPhase phase = DpPhase::sigma;
  std::size_t level = 0;
  std::vector<std::int64_t> v;  // s entries
  std::vector<std::int64_t> u;  // m entries
  std::int64_t budget = 0;
};

/// Memo value. `value` is exact when `exact` is set; otherwise it is a
/// proven lower bound produced under a cutoff.
struct DpValue {
  static constexpr std::int64_t kInfinity = INT64_MAX / 4;

  std::int64_t value = kInfinity;
  std::int64_t choice = 0;  // minimizing z at this level
  bool closes = false;      // z != 0 and every remaining variable is zero
  bool exact = false;

  bool finite() const { return value < kInfinity; }
};

struct DpStats {
  std::size_t states = 0;
  std::size_t evaluations = 0;
  std::size_t pruned = 0;
};

/// Exact evaluator of the two-phase recurrences. Values are norm^p integers
/// in native 64-bit arithmetic; the constructor checks every box bound fits.
///
/// A cutoff c may accompany any evaluation: the result r is exact whenever
/// r < c and otherwise only certifies sigma >= c. Branches are discarded
/// only when a lower bound proves they cannot beat the running minimum, so
/// cutoffs never change an exact value.
class SvpDp {
 public:
  static constexpr std::size_t kDefaultCapacity = 20'000'000;

  SvpDp(const HnfForm& form, unsigned p, const Integer& delta,
        const SvpBounds& bounds, std::size_t capacity = kDefaultCapacity);
  ~SvpDp();
  SvpDp(const SvpDp&) = delete;
  SvpDp& operator=(const SvpDp&) = delete;

  /// sigma(1, v, u, C): min over z != 0, |z| <= C.
  DpValue sigma_base(std::span<const std::int64_t> v,
                     std::span<const std::int64_t> u, std::int64_t budget);
  /// sigma(l, v, u, C) for 1 <= l <= k.
  DpValue sigma(std::size_t l, std::span<const std::int64_t> v,
                std::span<const std::int64_t> u, std::int64_t budget);
  /// sigma_bar(l, v, u, C) for 1 <= l <= s.
  DpValue sigma_bar(std::size_t l, std::span<const std::int64_t> v,
                    std::span<const std::int64_t> u, std::int64_t budget);

  /// Optimal solution: sigma_bar(s, 0, 0, total_l1), or sigma(k, 0, 0, mp)
  /// when s = 0. Coefficients are replayed from stored choices.
  SvpSolution solve();

  const DpStats& stats() const;
  /// Visits every memoized state (exact values and lower bounds).
  void for_each_state(const std::function<void(const DpKey&, const DpValue&)>& fn) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Full dynamic-program solve for a normalized instance.
SvpSolution dp_solve(const HnfForm& form, unsigned p, const Integer& delta,
                     const SvpBounds& bounds, DpStats* stats = nullptr);

/// Exhaustive search over nonzero form coordinates x = (alpha, beta) with
/// ||x||_1 <= radius (default: total_l1, which contains an optimum).
/// Partial sums of the objective prune branches that cannot improve.
SvpSolution brute_force_svp(const IntMatrix& h, unsigned p,
                            std::optional<Integer> l1_radius = std::nullopt,
                            std::size_t node_budget = 200'000'000);

struct SvpOptions {
  enum class Method { automatic, dp, fast_path, brute };
  Method method = Method::automatic;
};

struct SvpReport {
  SvpSolution solution;
  Integer delta;
  HnfForm form;
  std::optional<SvpBounds> bounds;
  DpStats stats;
};

/// Normalize, try the fast path, fall back to the dynamic program; the
/// returned certificate is re-verified against H before returning.
SvpReport solve_svp(const SvpInstance& instance, const SvpOptions& options = {});

}  // namespace fptlat
