#include <algorithm>
#include <numeric>

#include "fptlat/svp.hpp"

namespace fptlat {

namespace {

SvpSolution unit_combination(const HnfForm& form, std::size_t i,
                             std::optional<std::size_t> j, unsigned p) {
  IntVector x(form.n());
  x[i] = 1;
  if (j) x[*j] = -1;
  SvpSolution sol;
  sol.coeffs = form.to_input_coeffs(x);
  sol.vector = form.to_input_rows(form.assemble() * x);
  sol.norm_p = norm_pow(sol.vector, p);
  sol.method = SvpMethod::fast_path;
  return sol;
}

}  // namespace

std::optional<SvpSolution> fast_path(const HnfForm& form, unsigned p,
                                     const Integer& /*delta*/) {
  const std::size_t k = form.k;
  if (k == 0) return std::nullopt;

  std::vector<IntVector> cols(k);
  for (std::size_t j = 0; j < k; ++j) cols[j] = form.residual_column(j);

  // A zero residual column is a unit lattice vector: norm^p 1.
  for (std::size_t j = 0; j < k; ++j) {
    if (std::all_of(cols[j].begin(), cols[j].end(),
                    [](const Integer& v) { return v == 0; })) {
      return unit_combination(form, j, std::nullopt, p);
    }
  }

  // Equal residual columns i, j give e_i - e_j: norm^p 2, optimal once no
  // zero column exists.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cols[a] < cols[b];
  });
  for (std::size_t t = 1; t < k; ++t) {
    if (cols[order[t - 1]] == cols[order[t]]) {
      const auto [i, j] = std::minmax(order[t - 1], order[t]);
      return unit_combination(form, i, j, p);
    }
  }
  return std::nullopt;
}

}  // namespace fptlat
