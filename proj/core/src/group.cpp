#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/ilp.hpp"
#include "fptlat/linalg.hpp"

namespace fptlat {

namespace {

Integer fmod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntVector slice(const IntVector& v, std::size_t from, std::size_t count) {
  return IntVector(v.begin() + static_cast<std::ptrdiff_t>(from),
                   v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

long to_long(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw Error(ErrorKind::resource, std::string(what) + " " + v.get_str() +
                                         " exceeds the native group DP range");
  }
  return v.get_si();
}

}  // namespace

Rational GroupProblem::objective_from(const Integer& wx) const {
  Rational r(wx, delta_b);
  r.canonicalize();
  return -(r + offset);
}

GroupProblem reduce_to_group_problem(const IlpInstance& inst, const LpVertex& vertex) {
  const std::size_t d = inst.h.rows(), n = inst.h.cols();
  if (d - n >= 2) {
    throw Error(ErrorKind::unsupported_shape,
                "group reduction handles at most one row beyond the basis, got " +
                    std::to_string(d - n));
  }
  if (vertex.basis.size() != n) {
    throw Error(ErrorKind::dimension, "LP basis must have n rows");
  }

  GroupProblem gp;
  gp.n = n;
  gp.m = d - n;
  gp.h_input = inst.h;
  gp.b_input = inst.b;
  gp.c_input = inst.c;

  gp.row_order = vertex.basis;
  for (std::size_t r = 0; r < d; ++r)
    if (std::find(vertex.basis.begin(), vertex.basis.end(), r) == vertex.basis.end())
      gp.row_order.push_back(r);
  const IntMatrix reordered = inst.h.select_rows(gp.row_order);
  gp.form = hnf_normalize(reordered);
  const HnfForm& f = gp.form;
  for (std::size_t i = n; i < d; ++i) {
    if (f.row_perm[i] < n) {
      throw Error(ErrorKind::internal, "HNF pivots left the LP basis rows");
    }
  }
  gp.k = f.k;
  gp.s = f.s;
  const std::size_t k = f.k, s = f.s;

  for (std::size_t i = 0; i < d; ++i) gp.b_form.push_back(inst.b[gp.row_order[f.row_perm[i]]]);
  for (std::size_t i = 0; i < n; ++i) gp.slack_rows.push_back(gp.row_order[f.row_perm[i]]);
  const IntVector c_form = f.col_transform.transpose() * inst.c;
  const IntVector c_alpha = slice(c_form, 0, k), c_beta = slice(c_form, k, s);
  const IntVector b_k = slice(gp.b_form, 0, k);

  gp.b_hat = sub(slice(gp.b_form, k, s), f.block_a * b_k);
  gp.delta_b = f.pivot_product();
  gp.adj_b = s > 0 ? adjugate(f.block_b) : IntMatrix(0, 0);
  const Integer& delta = gp.delta_b;

  // Objective: w = (delta c_alpha - A^T B*^T c_beta, B*^T c_beta).
  const IntVector bstar_t_c = gp.adj_b.transpose() * c_beta;
  const IntVector a_t = f.block_a.transpose() * bstar_t_c;
  for (std::size_t i = 0; i < k; ++i) gp.w.push_back(delta * c_alpha[i] - a_t[i]);
  for (std::size_t i = 0; i < s; ++i) gp.w.push_back(bstar_t_c[i]);

  Rational beta_part(dot(c_beta, gp.adj_b * gp.b_hat), delta);
  beta_part.canonicalize();
  gp.offset = -Rational(dot(c_alpha, b_k)) - beta_part;

  if (gp.m == 1) {
    gp.b_hat_d = gp.b_form[n] - dot(f.block_abar.row(0), b_k);
    const IntMatrix bbar_bstar = f.block_bbar * gp.adj_b;  // 1 x s
    const IntMatrix left = bbar_bstar * f.block_a - delta * f.block_abar;
    IntVector h;
    for (std::size_t i = 0; i < k; ++i) h.push_back(left(0, i));
    for (std::size_t i = 0; i < s; ++i) h.push_back(-bbar_bstar(0, i));
    gp.h = h;
    gp.h0 = delta * gp.b_hat_d - dot(bbar_bstar.row(0), gp.b_hat);
  }

  // Congruences over x = (alpha~, y): P (b_hat + A alpha~ - y) = 0 mod S.
  gp.g_matrix = IntMatrix(s, n);
  if (s > 0) {
    gp.snf = snf(f.block_b);
    gp.modulus = gp.snf.diagonal();
    const IntMatrix pa = gp.snf.p * f.block_a;
    const IntVector pb = gp.snf.p * gp.b_hat;
    for (std::size_t i = 0; i < s; ++i) {
      const Integer& mod = gp.modulus[i];
      for (std::size_t j = 0; j < k; ++j) gp.g_matrix(i, j) = fmod(-pa(i, j), mod);
      for (std::size_t j = 0; j < s; ++j) gp.g_matrix(i, k + j) = fmod(gp.snf.p(i, j), mod);
      gp.g_rhs.push_back(fmod(pb[i], mod));
    }
  }

  gp.box_bound = Integer(static_cast<unsigned long>(n)) * max_subdeterminant(inst.h);
  for (std::size_t r : gp.slack_rows) gp.caps.push_back(gp.box_bound * norm1(inst.h.row(r)));
  gp.eta_cap = 0;
  if (gp.h) {
    for (std::size_t i = 0; i < n; ++i)
      if ((*gp.h)[i] > 0) gp.eta_cap += (*gp.h)[i] * gp.caps[i];
  }
  return gp;
}

namespace {

struct Entry {
  bool feasible = false;
  Integer value;
  long choice = 0;
};

class GroupDp {
 public:
  GroupDp(const GroupProblem& gp, std::size_t capacity) : gp_(gp), capacity_(capacity) {
    const std::size_t n = gp.n;
    for (std::size_t i = 0; i < n; ++i) {
      caps_.push_back(to_long(gp.caps[i], "slack cap"));
      hcoef_.push_back(gp.h ? to_long((*gp.h)[i], "side coefficient") : 0);
    }
    for (const auto& s : gp.modulus) mod_.push_back(to_long(s, "modulus"));
    gcol_.assign(n, std::vector<long>(mod_.size()));
    for (std::size_t i = 0; i < mod_.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) gcol_[j][i] = gp.g_matrix(i, j).get_si();
    lo_.assign(n + 1, 0);
    hi_.assign(n + 1, 0);
    for (std::size_t l = 1; l <= n; ++l) {
      const long t = hcoef_[l - 1] * caps_[l - 1];
      lo_[l] = lo_[l - 1] + std::min(0L, t);
      hi_[l] = hi_[l - 1] + std::max(0L, t);
    }
    // Level 1: first z >= 0 reaching each residue and the residue period.
    period_ = 1;
    std::vector<long> zero(mod_.size(), 0);
    std::vector<long> g = zero;
    do {
      first_z_.try_emplace(g, period_ - 1);
      step(g, 0, 1);
      ++period_;
    } while (g != zero);
    --period_;
  }

  std::optional<IntVector> solve(GroupStats* stats) {
    std::vector<long> gamma;
    for (const auto& v : gp_.g_rhs) gamma.push_back(v.get_si());
    long eta = 0;
    if (gp_.h) eta = to_long(std::min(gp_.h0, gp_.eta_cap), "h0");
    const Entry top = eval(gp_.n, gamma, eta);
    if (stats) {
      stats->states = memo_.size();
      stats->max_abs_eta = max_abs_eta_;
    }
    if (!top.feasible) return std::nullopt;

    IntVector x(gp_.n);
    for (std::size_t l = gp_.n; l >= 1; --l) {
      eta = std::min(eta, hi_[l]);
      const Entry e = eval(l, gamma, eta);
      if (!e.feasible) throw Error(ErrorKind::internal, "group DP replay lost feasibility");
      x[l - 1] = e.choice;
      step(gamma, l - 1, -e.choice);
      eta -= e.choice * hcoef_[l - 1];
    }
    return x;
  }

 private:
  void step(std::vector<long>& gamma, std::size_t col, long z) const {
    for (std::size_t i = 0; i < mod_.size(); ++i) {
      long v = (gamma[i] + z % mod_[i] * gcol_[col][i]) % mod_[i];
      gamma[i] = v < 0 ? v + mod_[i] : v;
    }
  }

  // min z w_1 over z in [0, cap] with z G_1 = gamma and z h_1 <= eta.
  Entry base(const std::vector<long>& gamma, long eta) const {
    Entry out;
    auto it = first_z_.find(gamma);
    if (it == first_z_.end()) return out;
    long lo = it->second, hi = caps_[0];
    const long h = hcoef_[0];
    if (h > 0) {
      hi = std::min(hi, eta >= 0 ? eta / h : -((-eta + h - 1) / h));
    } else if (h < 0) {
      const long need = eta >= 0 ? -(eta / -h) : (-eta + -h - 1) / -h;  // ceil(eta / h)
      lo = std::max(lo, need);
    } else if (eta < 0) {
      return out;
    }
    // Align lo onto the progression first_z + t * period.
    const long r = it->second;
    if (lo > r) lo = r + (lo - r + period_ - 1) / period_ * period_;
    if (lo > hi) return out;
    const Integer w = gp_.w[0];
    long z = lo;
    if (w < 0) z = lo + (hi - lo) / period_ * period_;
    out.feasible = true;
    out.choice = z;
    out.value = w * z;
    return out;
  }

  Entry eval(std::size_t l, const std::vector<long>& gamma, long eta) {
    if (eta < lo_[l]) return {};
    eta = std::min(eta, hi_[l]);
    if (l == 1) return base(gamma, eta);
    max_abs_eta_ = std::max(max_abs_eta_, Integer(std::labs(eta)));

    std::vector<long> key = gamma;
    key.push_back(static_cast<long>(l));
    key.push_back(eta);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Entry best;
    std::vector<long> g = gamma;
    const Integer& w = gp_.w[l - 1];
    for (long z = 0; z <= caps_[l - 1]; ++z) {
      if (z > 0) step(g, l - 1, -1);
      const Entry child = eval(l - 1, g, eta - z * hcoef_[l - 1]);
      if (!child.feasible) continue;
      Integer v = child.value + w * z;
      if (!best.feasible || v < best.value) {
        best.feasible = true;
        best.value = std::move(v);
        best.choice = z;
      }
    }
    memo_.emplace(std::move(key), best);
    if (memo_.size() > capacity_) {
      throw Error(ErrorKind::resource, "group DP exceeded capacity with " +
                                           std::to_string(memo_.size()) + " states");
    }
    return best;
  }

  const GroupProblem& gp_;
  std::size_t capacity_;
  std::vector<long> caps_, hcoef_, mod_, lo_, hi_;
  std::vector<std::vector<long>> gcol_;
  std::map<std::vector<long>, long> first_z_;
  long period_ = 1;
  std::map<std::vector<long>, Entry> memo_;
  Integer max_abs_eta_ = 0;
};

}  // namespace

std::optional<IntVector> group_dp_solve(const GroupProblem& gp, GroupStats* stats,
                                        std::size_t capacity) {
  GroupDp dp(gp, capacity);
  return dp.solve(stats);
}

IntVector to_group_coordinates(const GroupProblem& gp, const IntVector& x) {
  const IntVector hx = gp.h_input * x;
  IntVector out;
  for (std::size_t r : gp.slack_rows) out.push_back(gp.b_input[r] - hx[r]);
  return out;
}

IlpSolution recover_solution(const GroupProblem& gp, const IntVector& group_x) {
  const std::size_t k = gp.k, s = gp.s;
  if (group_x.size() != gp.n) throw Error(ErrorKind::dimension, "group solution length");
  const IntVector alpha_t = slice(group_x, 0, k), y = slice(group_x, k, s);
  const IntVector t = sub(gp.b_hat, sub(y, gp.form.block_a * alpha_t));
  const IntVector num = gp.adj_b * t;

  IntVector xf(gp.n);
  for (std::size_t i = 0; i < k; ++i) xf[i] = gp.b_form[i] - alpha_t[i];
  for (std::size_t i = 0; i < s; ++i) {
    if (!mpz_divisible_p(num[i].get_mpz_t(), gp.delta_b.get_mpz_t())) {
      throw Error(ErrorKind::internal,
                  "beta component " + std::to_string(i) + " is not integral: " +
                      num[i].get_str() + " / " + gp.delta_b.get_str());
    }
    xf[k + i] = num[i] / gp.delta_b;
  }

  IlpSolution sol;
  sol.x = gp.form.to_input_coeffs(xf);
  const IntVector hx = gp.h_input * sol.x;
  for (std::size_t r = 0; r < hx.size(); ++r) {
    if (hx[r] > gp.b_input[r]) {
      throw Error(ErrorKind::internal, "recovered point violates row " + std::to_string(r));
    }
  }
  sol.certified = true;
  sol.objective = dot(gp.c_input, sol.x);
  if (gp.objective_from(dot(gp.w, group_x)) != Rational(sol.objective)) {
    throw Error(ErrorKind::internal, "group objective does not match c.x = " +
                                         sol.objective.get_str());
  }
  return sol;
}

}  // namespace fptlat
