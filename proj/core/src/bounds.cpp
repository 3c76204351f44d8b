#include "fptlat/bounds.hpp"

#include <mpfr.h>

#include <string>

#include "fptlat/errors.hpp"

namespace fptlat {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

// RAII holder for an mpfr_t.
class Real {
 public:
  Real() { mpfr_init2(v_, kPrecision); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Integer ceil_to_integer(const Real& x) {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), x.get(), MPFR_RNDU);
  return out;
}

// (Delta / vol)^(1/n) * 2 * sqrt(e d / n), with vol the volume of the
// n-dimensional unit ball of the given norm.
void minkowski_radius(Real& out, const Integer& delta, unsigned long p,
                      std::size_t d, std::size_t n, bool euclidean) {
  Real vol, t, g;
  if (euclidean) {
    // pi^(n/2) / Gamma(1 + n/2)
    mpfr_const_pi(t.get(), MPFR_RNDN);
    mpfr_set_ui(g.get(), n, MPFR_RNDN);
    mpfr_div_ui(g.get(), g.get(), 2, MPFR_RNDN);
    mpfr_pow(vol.get(), t.get(), g.get(), MPFR_RNDN);
    mpfr_add_ui(g.get(), g.get(), 1, MPFR_RNDN);
    mpfr_gamma(g.get(), g.get(), MPFR_RNDN);
    mpfr_div(vol.get(), vol.get(), g.get(), MPFR_RNDN);
  } else {
    // (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p)
    mpfr_set_ui(t.get(), 1, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), p, MPFR_RNDN);
    mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
    mpfr_gamma(t.get(), t.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 2, MPFR_RNDN);
    mpfr_pow_ui(vol.get(), t.get(), n, MPFR_RNDN);
    mpfr_set_ui(g.get(), n, MPFR_RNDN);
    mpfr_div_ui(g.get(), g.get(), p, MPFR_RNDN);
    mpfr_add_ui(g.get(), g.get(), 1, MPFR_RNDN);
    mpfr_gamma(g.get(), g.get(), MPFR_RNDN);
    mpfr_div(vol.get(), vol.get(), g.get(), MPFR_RNDN);
  }
  // (Delta / vol)^(1/n)
  mpfr_set_z(out.get(), delta.get_mpz_t(), MPFR_RNDN);
  mpfr_div(out.get(), out.get(), vol.get(), MPFR_RNDN);
  mpfr_rootn_ui(out.get(), out.get(), n, MPFR_RNDN);
  // * 2 sqrt(e d / n)
  mpfr_set_ui(t.get(), 1, MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), d, MPFR_RNDN);
  mpfr_div_ui(t.get(), t.get(), n, MPFR_RNDN);
  mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(out.get(), out.get(), 2, MPFR_RNDN);
}

// Upward-inflates a value computed with round-to-nearest at kPrecision bits.
// A few dozen correctly rounded operations lose far less than 2^-200.
void inflate(Real& x) {
  Real eps;
  mpfr_set_ui_2exp(eps.get(), 1, -200, MPFR_RNDU);
  mpfr_add_ui(eps.get(), eps.get(), 1, MPFR_RNDU);
  mpfr_mul(x.get(), x.get(), eps.get(), MPFR_RNDU);
}

Integer pow_ui(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Integer ceil_root(const Integer& x, unsigned long p) {
  Integer r;
  const bool exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), p) != 0;
  return exact ? r : Integer(r + 1);
}

}  // namespace

Integer lemma1_entry_bound(const Integer& delta, std::size_t s, std::size_t i) {
  if (i > s) {
    throw Error(ErrorKind::range, "lemma1 index " + std::to_string(i) +
                                      " exceeds s = " + std::to_string(s));
  }
  Integer out = pow_ui(Integer(3), s - i) + 1;
  out *= delta;
  mpz_divexact_ui(out.get_mpz_t(), out.get_mpz_t(), 2);
  return out;
}

Lemma1Report verify_lemma1(const HnfForm& form, const Integer& delta) {
  Lemma1Report report;
  for (std::size_t j = 0; j < form.m; ++j) {
    for (std::size_t i = 0; i < form.s; ++i) {
      Integer bound = lemma1_entry_bound(delta, form.s, i + 1);
      if (abs(form.block_bbar(j, i)) > bound) {
        report.ok = false;
        report.violation = Lemma1Violation{false, j, i, form.block_bbar(j, i), bound};
        return report;
      }
    }
    const Integer abar_bound = lemma1_entry_bound(delta, form.s, 0);
    for (std::size_t i = 0; i < form.k; ++i) {
      if (abs(form.block_abar(j, i)) > abar_bound) {
        report.ok = false;
        report.violation = Lemma1Violation{true, j, i, form.block_abar(j, i), abar_bound};
        return report;
      }
    }
  }
  return report;
}

SvpBounds m_constant(const Integer& delta, std::size_t m, long p, std::size_t d,
                     std::size_t n) {
  if (p < 1) {
    throw Error(ErrorKind::parameter, "norm exponent must be a positive integer, got " +
                                          std::to_string(p));
  }
  if (delta < 1) throw Error(ErrorKind::parameter, "Delta must be >= 1");
  if (n == 0 || d < n) throw Error(ErrorKind::parameter, "need d >= n >= 1");

  const auto pu = static_cast<unsigned long>(p);
  SvpBounds b;
  b.p = static_cast<unsigned>(p);
  b.first_candidate = pow_ui(delta, pu) * Integer(static_cast<unsigned long>(m + 1));

  // The unit-ball volume argument only holds for a section of B_p when
  // p >= 2 or the lattice is full-dimensional; for p = 1 in a proper
  // subspace go through the Euclidean ball and ||x||_1 <= sqrt(d) ||x||_2.
  const bool via_euclidean = pu < 2 && d > n;
  Real radius;
  minkowski_radius(radius, delta, pu, d, n, via_euclidean);
  if (via_euclidean) {
    Real sd;
    mpfr_set_ui(sd.get(), d, MPFR_RNDN);
    mpfr_sqrt(sd.get(), sd.get(), MPFR_RNDN);
    mpfr_mul(radius.get(), radius.get(), sd.get(), MPFR_RNDN);
  }
  mpfr_pow_ui(radius.get(), radius.get(), pu, MPFR_RNDN);
  inflate(radius);
  b.second_candidate = ceil_to_integer(radius);

  b.mp = b.first_candidate < b.second_candidate ? b.first_candidate
                                                 : b.second_candidate;
  b.mhalf_num = ceil_root(b.mp, pu);
  b.mhalf_den = 2;
  b.alpha_l1 = b.mp;
  b.total_l1 = 2 * (1 + delta) * b.mp;
  b.v_box = 2 * delta * (1 + delta) * b.mp;
  b.u_box = b.v_box;
  return b;
}

SvpBounds lemma2_bounds(SvpBounds bounds, const Integer& delta, std::size_t s) {
  bounds.beta_abs.assign(s, Integer(0));
  // 2^(i-1) (mp + num/den), rounded up
  for (std::size_t i = 0; i < s; ++i) {
    Integer scaled = pow_ui(Integer(2), i) * (bounds.mp * bounds.mhalf_den + bounds.mhalf_num);
    mpz_cdiv_q(bounds.beta_abs[i].get_mpz_t(), scaled.get_mpz_t(),
               bounds.mhalf_den.get_mpz_t());
  }
  bounds.total_l1 = 2 * (1 + delta) * bounds.mp;
  bounds.v_box = 2 * delta * (1 + delta) * bounds.mp;
  bounds.u_box = delta * (pow_ui(Integer(3), s) + 1) * (1 + delta) * bounds.mp;
  return bounds;
}

Integer power_log_threshold(const Integer& delta, unsigned long a, unsigned long b) {
  if (delta < 1) throw Error(ErrorKind::parameter, "Delta must be >= 1");
  const std::size_t bits = mpz_sizeinbase(delta.get_mpz_t(), 2);
  const bool power_of_two = mpz_popcount(delta.get_mpz_t()) == 1;
  if (power_of_two) {
    const unsigned long t = bits - 1;
    return pow_ui(delta, a) * pow_ui(Integer(3), b * t) + Integer(t);
  }
  Real lg, x, y;
  mpfr_set_z(x.get(), delta.get_mpz_t(), MPFR_RNDU);
  mpfr_log2(lg.get(), x.get(), MPFR_RNDU);
  // 3^(b lg)
  mpfr_mul_ui(y.get(), lg.get(), b, MPFR_RNDU);
  mpfr_ui_pow(y.get(), 3, y.get(), MPFR_RNDU);
  mpfr_pow_ui(x.get(), x.get(), a, MPFR_RNDU);
  mpfr_mul(x.get(), x.get(), y.get(), MPFR_RNDU);
  mpfr_add(x.get(), x.get(), lg.get(), MPFR_RNDU);
  return ceil_to_integer(x);
}

Integer lemma3_threshold(const Integer& delta) {
  // Delta^(3 + 2 log2 3) = Delta^3 * 3^(2 log2 Delta)
  return power_log_threshold(delta, 3, 2);
}

Integer theorem1_threshold(const Integer& delta, std::size_t m) {
  // Delta^(1 + m + m log2 3) = Delta^(1+m) * 3^(m log2 Delta)
  return power_log_threshold(delta, 1 + m, m);
}

}  // namespace fptlat
