#include <algorithm>
#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/ilp.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

void IlpInstance::validate(bool require_nonsingular) const {
  if (b.size() != h.rows()) {
    throw Error(ErrorKind::dimension, "b has " + std::to_string(b.size()) +
                                          " entries, H has " + std::to_string(h.rows()) +
                                          " rows");
  }
  if (c.size() != h.cols()) {
    throw Error(ErrorKind::dimension, "c has " + std::to_string(c.size()) +
                                          " entries, H has " + std::to_string(h.cols()) +
                                          " columns");
  }
  require_full_column_rank(h);
  if (require_nonsingular && has_singular_rank_submatrix(h)) {
    throw Error(ErrorKind::structure, "H has a singular n x n row submatrix");
  }
}

Integer max_subdeterminant(const IntMatrix& h) {
  Integer best = 0;
  const std::size_t top = std::min(h.rows(), h.cols());
  for (std::size_t order = 1; order <= top; ++order) {
    for_each_subset(h.rows(), order, [&](std::span<const std::size_t> rows) {
      const IntMatrix r = h.select_rows(rows);
      for_each_subset(h.cols(), order, [&](std::span<const std::size_t> cols) {
        const Integer v = abs(det(r.select_cols(cols)));
        if (v > best) best = v;
        return true;
      });
      return true;
    });
  }
  return best;
}

LpResult solve_lp_relaxation(const IlpInstance& inst) {
  inst.validate(false);
  const IntMatrix& h = inst.h;
  const std::size_t d = h.rows(), n = h.cols();

  LpResult result;
  bool dual_feasible = false;
  for_each_subset(d, n, [&](std::span<const std::size_t> rows) {
    const IntMatrix sub = h.select_rows(rows);
    IntVector rhs;
    for (std::size_t r : rows) rhs.push_back(inst.b[r]);
    auto point = solve_rational(sub, rhs);
    if (!point) return true;

    if (!dual_feasible) {
      // c = sub^T y with y >= 0 certifies the LP is bounded.
      auto y = solve_rational(sub.transpose(), inst.c);
      dual_feasible = std::all_of(y->begin(), y->end(), [](const Rational& v) { return v >= 0; });
    }

    for (std::size_t i = 0; i < d; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < n; ++j) lhs += Rational(h(i, j)) * (*point)[j];
      if (lhs > Rational(inst.b[i])) return true;
    }
    Rational obj = 0;
    for (std::size_t j = 0; j < n; ++j) obj += Rational(inst.c[j]) * (*point)[j];
    if (!result.vertex || obj > result.vertex->objective) {
      result.vertex = LpVertex{*point, {rows.begin(), rows.end()}, obj};
    }
    return true;
  });

  if (!result.vertex) {
    result.status = LpStatus::infeasible;
  } else if (!dual_feasible) {
    result.status = LpStatus::unbounded;
    result.vertex.reset();
  } else {
    result.status = LpStatus::optimal;
  }
  return result;
}

}  // namespace fptlat
