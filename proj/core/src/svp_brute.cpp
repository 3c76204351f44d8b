#include <string>

#include "fptlat/errors.hpp"
#include "fptlat/linalg.hpp"
#include "fptlat/svp.hpp"

namespace fptlat {

namespace {

Integer ipow(const Integer& x, unsigned p) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), Integer(abs(x)).get_mpz_t(), p);
  return r;
}

struct BruteSearch {
  const HnfForm& form;
  IntMatrix f;
  unsigned p;
  Integer radius;
  std::size_t node_budget;
  std::size_t nodes = 0;
  std::size_t k, s, m;

  IntVector x;
  IntVector rows;  // running form rows k..d-1
  Integer best;
  IntVector best_x;

  BruteSearch(const HnfForm& fm, unsigned pp, Integer r, std::size_t budget)
      : form(fm), f(fm.assemble()), p(pp), radius(std::move(r)), node_budget(budget),
        k(fm.k), s(fm.s), m(fm.m), x(fm.n()), rows(fm.s + fm.m) {}

  void tick() {
    if (++nodes > node_budget) {
      throw Error(ErrorKind::resource, "brute-force SVP exceeded " +
                                           std::to_string(node_budget) + " nodes");
    }
  }

  void apply(std::size_t col, const Integer& z) {
    for (std::size_t r = 0; r < s + m; ++r) rows[r] += f(k + r, col) * z;
  }

  bool nonzero() const {
    for (const auto& v : x)
      if (v != 0) return true;
    return false;
  }

  void leaf(const Integer& partial) {
    if (!nonzero()) return;
    Integer total = partial;
    for (std::size_t r = s; r < s + m; ++r) total += ipow(rows[r], p);
    if (total < best) {
      best = total;
      best_x = x;
    }
  }

  // beta_j for j = idx - k; row j of the B block is final once it is chosen.
  void beta(std::size_t j, const Integer& partial, const Integer& left) {
    tick();
    if (j == s) {
      leaf(partial);
      return;
    }
    const std::size_t col = k + j;
    const Integer pivot = f(k + j, col);
    for (Integer mag = 0; mag <= left; ++mag) {
      bool any = false;
      for (int sign : {1, -1}) {
        if (mag == 0 && sign < 0) continue;
        const Integer z = sign * mag;
        apply(col, z);
        const Integer here = partial + ipow(rows[j], p);
        if (here < best) {
          any = true;
          x[col] = z;
          beta(j + 1, here, left - mag);
          x[col] = 0;
        }
        apply(col, -z);
      }
      // |row_j| only grows with |beta_j| once past the base value.
      if (!any && pivot * mag >= abs(rows[j])) break;
    }
  }

  void alpha(std::size_t i, const Integer& partial, const Integer& left) {
    tick();
    if (i == k) {
      beta(0, partial, left);
      return;
    }
    for (Integer mag = 0; mag <= left; ++mag) {
      const Integer here = partial + ipow(mag, p);
      if (here >= best) break;
      for (int sign : {1, -1}) {
        if (mag == 0 && sign < 0) continue;
        const Integer z = sign * mag;
        x[i] = z;
        apply(i, z);
        alpha(i + 1, here, left - mag);
        apply(i, -z);
        x[i] = 0;
      }
    }
  }
};

}  // namespace

SvpSolution brute_force_svp(const IntMatrix& h, unsigned p, std::optional<Integer> l1_radius,
                            std::size_t node_budget) {
  if (p < 1) throw Error(ErrorKind::parameter, "p must be >= 1");
  const HnfForm form = hnf_normalize(h);
  Integer radius;
  if (l1_radius) {
    radius = *l1_radius;
  } else {
    const Integer delta = max_rank_minor(h);
    radius = lemma2_bounds(m_constant(delta, form.m, p, form.d(), form.n()), delta, form.s)
                 .total_l1;
  }
  if (radius < 1) throw Error(ErrorKind::parameter, "l1 radius must be >= 1");

  BruteSearch search(form, p, radius, node_budget);
  // The shortest unit coordinate vector seeds the incumbent.
  for (std::size_t j = 0; j < form.n(); ++j) {
    const Integer np = norm_pow(search.f.col(j), p);
    if (search.best_x.empty() || np < search.best) {
      search.best = np;
      search.best_x.assign(form.n(), 0);
      search.best_x[j] = 1;
    }
  }
  search.best += 1;
  const Integer seeded = search.best;
  IntVector seed_x = search.best_x;
  search.alpha(0, 0, radius);
  if (search.best == seeded) {
    search.best -= 1;
    search.best_x = seed_x;
  }

  SvpSolution sol;
  sol.coeffs = form.to_input_coeffs(search.best_x);
  sol.vector = h * sol.coeffs;
  sol.norm_p = norm_pow(sol.vector, p);
  sol.method = SvpMethod::brute;
  return sol;
}

}  // namespace fptlat
