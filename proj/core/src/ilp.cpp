#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/ilp.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

std::string_view to_string(IlpMethod m) {
  switch (m) {
    case IlpMethod::group: return "group";
    case IlpMethod::brute: return "brute";
  }
  return "unknown";
}

namespace {

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

constexpr long kNativeLimit = 1L << 28;

long native(const Integer& v, const char* what) {
  if (abs(v) >= kNativeLimit) {
    throw Error(ErrorKind::resource, std::string(what) + " " + v.get_str() +
                                         " is too large for box enumeration");
  }
  return v.get_si();
}

std::string describe(const IlpSolution& s) {
  std::string out = "x = (";
  for (std::size_t i = 0; i < s.x.size(); ++i) out += (i ? ", " : "") + s.x[i].get_str();
  return out + "), c.x = " + s.objective.get_str();
}

}  // namespace

std::optional<IlpSolution> brute_force_ilp(const IlpInstance& inst, const LpVertex& vertex,
                                           std::optional<Integer> radius,
                                           std::size_t point_budget) {
  const IntMatrix& h = inst.h;
  const std::size_t d = h.rows(), n = h.cols();
  const Integer r = radius ? *radius
                           : Integer(static_cast<unsigned long>(n)) * max_subdeterminant(h);

  std::vector<long> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = native(ceil_q(vertex.point[j] - r), "box bound");
    hi[j] = native(floor_q(vertex.point[j] + r), "box bound");
    if (lo[j] > hi[j]) return std::nullopt;
  }
  std::vector<long> hm(d * n), bv(d), cv(n);
  for (std::size_t i = 0; i < d; ++i) {
    bv[i] = native(inst.b[i], "right-hand side");
    for (std::size_t j = 0; j < n; ++j) hm[i * n + j] = native(h(i, j), "matrix entry");
  }
  for (std::size_t j = 0; j < n; ++j) cv[j] = native(inst.c[j], "objective entry");

  std::size_t points = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const auto width = static_cast<std::size_t>(hi[j] - lo[j] + 1);
    if (points > point_budget / width) {
      throw Error(ErrorKind::resource, "brute-force ILP box exceeds " +
                                           std::to_string(point_budget) + " points");
    }
    points *= width;
  }

  // Odometer over the box with incremental row sums. Operands stay below
  // 2^28, so every sum of n < 64 products fits in a long.
  if (n >= 64) throw Error(ErrorKind::resource, "brute-force ILP supports n < 64");
  std::vector<long> x = lo;
  std::vector<long> rows(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i] += hm[i * n + j] * x[j];
  long obj = 0;
  for (std::size_t j = 0; j < n; ++j) obj += cv[j] * x[j];

  bool found = false;
  long best = 0;
  std::vector<long> best_x;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) ok = rows[i] <= bv[i];
    if (ok && (!found || obj > best)) {
      found = true;
      best = obj;
      best_x = x;
    }
    bool advanced = false;
    for (std::size_t j = n; j-- > 0;) {
      if (x[j] < hi[j]) {
        ++x[j];
        for (std::size_t i = 0; i < d; ++i) rows[i] += hm[i * n + j];
        obj += cv[j];
        advanced = true;
        break;
      }
      const long back = x[j] - lo[j];
      x[j] = lo[j];
      for (std::size_t i = 0; i < d; ++i) rows[i] -= hm[i * n + j] * back;
      obj -= cv[j] * back;
    }
    if (!advanced) break;
  }
  if (!found) return std::nullopt;

  IlpSolution sol;
  for (long v : best_x) sol.x.emplace_back(v);
  sol.objective = dot(inst.c, sol.x);
  const IntVector hx = h * sol.x;
  sol.certified = true;
  for (std::size_t i = 0; i < d; ++i) sol.certified = sol.certified && hx[i] <= inst.b[i];
  if (!sol.certified) throw Error(ErrorKind::internal, "brute-force ILP point is infeasible");
  return sol;
}

IlpReport solve_ilp(const IlpInstance& inst, const IlpOptions& options) {
  inst.validate(false);
  IlpReport report;
  report.delta = max_rank_minor(inst.h);

  const LpResult lp = solve_lp_relaxation(inst);
  report.status = lp.status;
  report.vertex = lp.vertex;
  if (lp.status != LpStatus::optimal) return report;
  const LpVertex& vertex = *lp.vertex;

  using Method = IlpOptions::Method;
  const bool wide = inst.h.rows() >= inst.h.cols() + 2;
  bool brute = options.method == Method::brute;
  if (options.method == Method::automatic && options.allow_brute_fallback &&
      (wide || has_singular_rank_submatrix(inst.h))) {
    brute = true;
  }

  if (brute) {
    report.method = IlpMethod::brute;
    report.solution = brute_force_ilp(inst, vertex);
  } else {
    if (wide) {
      throw Error(ErrorKind::unsupported_shape,
                  "group method needs d <= n + 1, got d = " + std::to_string(inst.h.rows()) +
                      ", n = " + std::to_string(inst.h.cols()));
    }
    inst.validate(true);
    report.method = IlpMethod::group;
    report.group = reduce_to_group_problem(inst, vertex);
    if (auto gx = group_dp_solve(*report.group, &report.stats)) {
      report.solution = recover_solution(*report.group, *gx);
    }
  }

  if (options.cross_check && !brute) {
    const auto other = brute_force_ilp(inst, vertex);
    const bool agree = other.has_value() == report.solution.has_value() &&
                       (!other || other->objective == report.solution->objective);
    if (!agree) {
      throw Error(ErrorKind::internal,
                  "cross-check mismatch: group " +
                      (report.solution ? describe(*report.solution) : std::string("infeasible")) +
                      "; brute " + (other ? describe(*other) : std::string("infeasible")));
    }
  }
  report.status = report.solution ? LpStatus::optimal : LpStatus::infeasible;
  return report;
}

}  // namespace fptlat
