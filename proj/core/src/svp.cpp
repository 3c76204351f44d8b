#include "fptlat/svp.hpp"

#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

std::string_view to_string(SvpMethod m) {
  switch (m) {
    case SvpMethod::fast_path: return "fast_path";
    case SvpMethod::dp: return "dp";
    case SvpMethod::brute: return "brute";
  }
  return "unknown";
}

SvpMethod svp_method_from_string(std::string_view s) {
  if (s == "fast_path" || s == "fastpath") return SvpMethod::fast_path;
  if (s == "dp") return SvpMethod::dp;
  if (s == "brute") return SvpMethod::brute;
  throw Error(ErrorKind::parse, "unknown SVP method '" + std::string(s) + "'");
}

void SvpInstance::validate() const {
  if (p < 1) {
    throw Error(ErrorKind::parameter,
                "norm exponent must be a positive integer, got " + std::to_string(p));
  }
  require_full_column_rank(h);
}

std::optional<std::string> check_svp_solution(const IntMatrix& h, unsigned p,
                                              const SvpSolution& sol) {
  if (sol.coeffs.size() != h.cols()) return "coefficient vector has wrong length";
  bool nonzero = false;
  for (const auto& c : sol.coeffs) nonzero = nonzero || c != 0;
  if (!nonzero) return "coefficient vector is zero";
  const IntVector v = h * sol.coeffs;
  if (v != sol.vector) return "vector != H * coeffs";
  if (norm_pow(v, p) != sol.norm_p) return "norm_p does not match the vector";
  return std::nullopt;
}

SvpSolution dp_solve(const HnfForm& form, unsigned p, const Integer& delta,
                     const SvpBounds& bounds, DpStats* stats) {
  SvpDp dp(form, p, delta, bounds);
  SvpSolution sol = dp.solve();
  if (stats) *stats = dp.stats();
  return sol;
}

SvpReport solve_svp(const SvpInstance& instance, const SvpOptions& options) {
  instance.validate();
  const auto p = static_cast<unsigned>(instance.p);
  const IntMatrix& h = instance.h;

  SvpReport report;
  report.delta = max_rank_minor(h);
  report.form = hnf_normalize(h);
  const HnfForm& form = report.form;

  using Method = SvpOptions::Method;
  std::optional<SvpSolution> sol;
  if (options.method == Method::automatic || options.method == Method::fast_path) {
    sol = fast_path(form, p, report.delta);
    if (!sol && options.method == Method::fast_path) {
      throw Error(ErrorKind::unsupported_shape,
                  "fast path does not apply: no zero or duplicate column in the "
                  "residual block");
    }
  }
  if (!sol) {
    SvpBounds bounds = lemma2_bounds(
        m_constant(report.delta, form.m, instance.p, form.d(), form.n()),
        report.delta, form.s);
    report.bounds = bounds;
    if (options.method == Method::brute) {
      sol = brute_force_svp(h, p, bounds.total_l1);
    } else {
      sol = dp_solve(form, p, report.delta, bounds, &report.stats);
    }
  }
  if (auto bad = check_svp_solution(h, p, *sol)) {
    throw Error(ErrorKind::internal, "SVP certificate check failed: " + *bad);
  }
  report.solution = std::move(*sol);
  return report;
}

}  // namespace fptlat
