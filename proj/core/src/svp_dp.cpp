#include <algorithm>
#include <string>
#include <unordered_map>

#include "fptlat/errors.hpp"
#include "fptlat/svp.hpp"

namespace fptlat {

namespace {

using i64 = std::int64_t;
constexpr i64 kInf = DpValue::kInfinity;
// Every box bound must stay below this so sums of products cannot overflow.
constexpr i64 kNativeLimit = i64{1} << 52;

i64 iabs(i64 x) { return x < 0 ? -x : x; }

i64 sat_add(i64 a, i64 b) { return a >= kInf - b ? kInf : a + b; }

i64 pow_sat(i64 x, unsigned p) {
  x = iabs(x);
  i64 r = 1;
  for (unsigned i = 0; i < p; ++i) {
    if (x != 0 && r > kInf / x) return kInf;
    r *= x;
  }
  return r;
}

// Largest r >= 0 with r^p <= x.
i64 iroot_floor(i64 x, unsigned p) {
  if (x <= 0) return 0;
  if (p == 1) return x;
  i64 lo = 0, hi = 1;
  while (pow_sat(hi, p) <= x) hi *= 2;
  while (hi - lo > 1) {
    const i64 mid = lo + (hi - lo) / 2;
    (pow_sat(mid, p) <= x ? lo : hi) = mid;
  }
  return lo;
}

i64 to_native(const Integer& v, const char* what) {
  if (abs(v) >= kNativeLimit) {
    throw Error(ErrorKind::resource, std::string(what) + " = " + v.get_str() +
                                         " exceeds the native DP range");
  }
  return v.get_si();
}

struct KeyHash {
  std::size_t operator()(const std::vector<i64>& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (i64 x : key) {
      std::uint64_t z = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + h;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

struct SvpDp::Impl {
  const HnfForm& form;
  std::size_t k, s, m, rows;
  unsigned p;
  i64 mp, total_l1;
  std::vector<i64> beta_abs;
  // Row r < s is a B row, r >= s an extra row.
  std::vector<i64> alpha_coef;  // rows x k
  std::vector<i64> beta_coef;   // rows x s
  // alpha_max[r * (k + 1) + l] = max |alpha_coef(r, i)| over i < l
  std::vector<i64> alpha_max;
  std::unordered_map<std::vector<i64>, DpValue, KeyHash> memo;
  std::size_t capacity;
  DpStats stats;

  Impl(const HnfForm& f, unsigned pp, const Integer& delta, const SvpBounds& bounds,
       std::size_t cap)
      : form(f), k(f.k), s(f.s), m(f.m), rows(f.s + f.m), p(pp), capacity(cap) {
    if (p < 1) throw Error(ErrorKind::parameter, "p must be >= 1");
    if (bounds.beta_abs.size() != s) {
      throw Error(ErrorKind::parameter, "bounds carry " +
                                            std::to_string(bounds.beta_abs.size()) +
                                            " beta limits, form has s = " +
                                            std::to_string(s));
    }
    mp = to_native(bounds.mp, "M^p bound");
    total_l1 = to_native(bounds.total_l1, "total l1 bound");
    for (const auto& b : bounds.beta_abs) beta_abs.push_back(to_native(b, "beta bound"));
    alpha_coef.resize(rows * k);
    beta_coef.resize(rows * s);
    Integer widest = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < k; ++i) {
        const Integer& c = r < s ? f.block_a(r, i) : f.block_abar(r - s, i);
        alpha_coef[r * k + i] = to_native(c, "alpha coefficient");
        if (abs(c) > widest) widest = abs(c);
      }
      for (std::size_t i = 0; i < s; ++i) {
        const Integer& c = r < s ? f.block_b(r, i) : f.block_bbar(r - s, i);
        beta_coef[r * s + i] = to_native(c, "beta coefficient");
        if (abs(c) > widest) widest = abs(c);
      }
    }
    // |v|, |u| never exceed widest * total_l1, and products of caps with
    // coefficients are bounded the same way.
    to_native(widest * bounds.total_l1 * Integer(static_cast<unsigned long>(rows + 2)),
              "state magnitude bound");
    (void)delta;
    alpha_max.assign(rows * (k + 1), 0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t l = 1; l <= k; ++l)
        alpha_max[r * (k + 1) + l] =
            std::max(alpha_max[r * (k + 1) + l - 1], iabs(alpha_coef[r * k + l - 1]));
  }

  i64 acoef(std::size_t r, std::size_t i) const { return alpha_coef[r * k + i]; }
  i64 bcoef(std::size_t r, std::size_t i) const { return beta_coef[r * s + i]; }
  i64 amax(std::size_t r, std::size_t l) const { return alpha_max[r * (k + 1) + l]; }

  i64 closing(std::span<const i64> w) const {
    i64 total = 0;
    for (i64 x : w) total = sat_add(total, pow_sat(x, p));
    return total;
  }

  std::vector<i64> make_key(DpPhase ph, std::size_t l, std::span<const i64> w,
                            i64 budget) const {
    std::vector<i64> key;
    key.reserve(3 + w.size());
    key.push_back(static_cast<i64>(ph));
    key.push_back(static_cast<i64>(l));
    key.push_back(budget);
    key.insert(key.end(), w.begin(), w.end());
    return key;
  }

  // Caps on |beta_i|, i < l, for any completion with objective < cutoff.
  void beta_caps(std::size_t l, std::span<const i64> w, i64 budget, i64 mu,
                 i64 alpha_cap, std::vector<i64>& caps) const {
    caps.assign(l, 0);
    for (std::size_t i = 0; i < l; ++i) {
      i64 num = mu + iabs(w[i]) + amax(i, k) * alpha_cap;
      for (std::size_t j = 0; j < i; ++j) num += bcoef(i, j) * caps[j];
      caps[i] = std::min({beta_abs[i], budget, num / bcoef(i, i)});
    }
  }

  i64 row_slack(std::size_t r, std::size_t beta_left, std::span<const i64> caps,
                std::size_t alpha_left, i64 alpha_cap) const {
    i64 slack = amax(r, alpha_left) * alpha_cap;
    for (std::size_t i = 0; i < beta_left; ++i) slack += iabs(bcoef(r, i)) * caps[i];
    return slack;
  }

  // False when no completion of the state can reach an objective < cutoff:
  // some row is farther from zero than its remaining variables can repair.
  bool can_beat(DpPhase ph, std::size_t l, std::span<const i64> w, i64 budget,
                i64 cutoff) const {
    if (cutoff >= kInf) return true;
    const i64 mu = iroot_floor(cutoff - 1, p);
    i64 alpha_cap = std::min(budget, cutoff - 1);
    std::vector<i64> caps;
    std::size_t beta_left = 0, alpha_left = l;
    if (ph == DpPhase::sigma_bar) {
      alpha_cap = std::min(alpha_cap, mp);
      beta_caps(l, w, budget, mu, alpha_cap, caps);
      beta_left = l;
      alpha_left = k;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (iabs(w[r]) - row_slack(r, beta_left, caps, alpha_left, alpha_cap) > mu) {
        return false;
      }
    }
    return true;
  }

  i64 eval(DpPhase ph, std::size_t l, std::span<const i64> w, i64 budget, i64 cutoff) {
    ++stats.evaluations;
    if (ph == DpPhase::sigma && l == 0) return kInf;
    if (budget < 1) return kInf;
    if (!can_beat(ph, l, w, budget, cutoff)) {
      ++stats.pruned;
      return cutoff;
    }
    auto key = make_key(ph, l, w, budget);
    if (auto it = memo.find(key); it != memo.end()) {
      if (it->second.exact || it->second.value >= cutoff) return it->second.value;
    }
    DpValue val = ph == DpPhase::sigma ? compute_sigma(l, w, budget, cutoff)
                                       : compute_sigma_bar(l, w, budget, cutoff);
    auto [it, inserted] = memo.try_emplace(std::move(key), val);
    if (inserted) {
      if (memo.size() > capacity) {
        throw Error(ErrorKind::resource, "DP memo exceeded capacity with " +
                                             std::to_string(memo.size()) + " states");
      }
      stats.states = memo.size();
    } else {
      it->second = val;
    }
    return val.value;
  }

  static void finish(DpValue& out, bool found, i64 best, i64 cutoff) {
    if (found) {
      out.value = best;
      out.exact = true;
    } else {
      out.value = cutoff;
      out.exact = cutoff >= kInf;
    }
  }

  // sigma(l, w, C): alpha_l = z, recurse on alpha_1..alpha_{l-1}.
  DpValue compute_sigma(std::size_t l, std::span<const i64> w, i64 budget, i64 cutoff) {
    DpValue out;
    i64 best = cutoff;
    bool found = false;
    if (l > 1) {
      const i64 r = eval(DpPhase::sigma, l - 1, w, budget, best);
      if (r < best) {
        best = r;
        found = true;
        out.choice = 0;
        out.closes = false;
      }
    }
    std::vector<i64> wz(w.size());
    for (i64 mag = 1; mag <= budget; ++mag) {
      const i64 zp = pow_sat(mag, p);
      if (zp >= best) break;
      for (i64 z : {mag, -mag}) {
        if (zp >= best) break;
        for (std::size_t r = 0; r < rows; ++r) wz[r] = w[r] + acoef(r, l - 1) * z;
        const i64 cand = sat_add(zp, closing(wz));
        if (cand < best) {
          best = cand;
          found = true;
          out.choice = z;
          out.closes = true;
        }
        if (l > 1 && budget - mag >= 1) {
          const i64 lim = best - zp;
          const i64 r = eval(DpPhase::sigma, l - 1, wz, budget - mag, lim);
          if (r < lim) {
            best = zp + r;
            found = true;
            out.choice = z;
            out.closes = false;
          }
        }
      }
    }
    finish(out, found, best, cutoff);
    return out;
  }

  i64 beta_child(std::size_t l, std::span<const i64> w, i64 budget, i64 cutoff) {
    if (l > 1) return eval(DpPhase::sigma_bar, l - 1, w, budget, cutoff);
    if (k == 0) return kInf;
    return eval(DpPhase::sigma, k, w, std::min(budget, mp), cutoff);
  }

  // Row l-1 decides when larger |z| can no longer help: past the point where
  // b_ll |z| >= |w_{l-1}| its value only moves away from zero.
  bool row_dead(std::size_t l, std::span<const i64> wz, i64 budget_left, i64 best) const {
    if (best >= kInf) return false;
    const std::size_t r = l - 1;
    const i64 mu = iroot_floor(best - 1, p);
    const i64 alpha_cap = std::max<i64>(0, std::min({budget_left, best - 1, mp}));
    std::vector<i64> caps;
    beta_caps(l - 1, wz, std::max<i64>(budget_left, 0), mu, alpha_cap, caps);
    return iabs(wz[r]) - row_slack(r, l - 1, caps, k, alpha_cap) > mu;
  }

  // sigma_bar(l, w, C): beta_l = z; no |z|^p term, beta enters only via rows.
  DpValue compute_sigma_bar(std::size_t l, std::span<const i64> w, i64 budget,
                            i64 cutoff) {
    DpValue out;
    i64 best = cutoff;
    bool found = false;
    {
      const i64 r = beta_child(l, w, budget, best);
      if (r < best) {
        best = r;
        found = true;
        out.choice = 0;
        out.closes = false;
      }
    }
    const i64 range = std::min(budget, beta_abs[l - 1]);
    const i64 pivot = bcoef(l - 1, l - 1);
    std::vector<i64> wz(w.size());
    for (i64 mag = 1; mag <= range; ++mag) {
      bool live = false;
      for (i64 z : {mag, -mag}) {
        for (std::size_t r = 0; r < rows; ++r) wz[r] = w[r] + bcoef(r, l - 1) * z;
        const i64 cl = closing(wz);
        if (cl < best) {
          best = cl;
          found = true;
          out.choice = z;
          out.closes = true;
        }
        if (budget - mag >= 1) {
          const i64 r = beta_child(l, wz, budget - mag, best);
          if (r < best) {
            best = r;
            found = true;
            out.choice = z;
            out.closes = false;
          }
        }
        if (!row_dead(l, wz, budget - mag, best)) live = true;
      }
      if (!live && pivot * mag >= iabs(w[l - 1])) break;
    }
    finish(out, found, best, cutoff);
    return out;
  }

  const DpValue& lookup(DpPhase ph, std::size_t l, std::span<const i64> w, i64 budget) const {
    auto it = memo.find(make_key(ph, l, w, budget));
    if (it == memo.end() || !it->second.exact) {
      throw Error(ErrorKind::internal, "DP replay reached a state without an exact value");
    }
    return it->second;
  }

  DpValue query(DpPhase ph, std::size_t l, std::span<const i64> v,
                std::span<const i64> u, i64 budget) {
    if (v.size() != s || u.size() != m) {
      throw Error(ErrorKind::dimension, "state vectors must have lengths s and m");
    }
    std::vector<i64> w(v.begin(), v.end());
    w.insert(w.end(), u.begin(), u.end());
    const i64 value = eval(ph, l, w, budget, kInf);
    if (budget < 1 || value >= kInf) {
      DpValue inf;
      inf.exact = true;
      return inf;
    }
    return lookup(ph, l, w, budget);
  }

  SvpSolution solve() {
    // Any form column is a lattice vector inside the search box.
    const IntMatrix f = form.assemble();
    Integer shortest = -1;
    for (std::size_t j = 0; j < form.n(); ++j) {
      const Integer np = norm_pow(f.col(j), p);
      if (shortest < 0 || np < shortest) shortest = np;
    }
    const i64 cutoff = shortest < kInf ? sat_add(shortest.get_si(), 1) : kInf;

    std::vector<i64> w(rows, 0);
    DpPhase ph = s > 0 ? DpPhase::sigma_bar : DpPhase::sigma;
    std::size_t l = s > 0 ? s : k;
    i64 budget = s > 0 ? total_l1 : mp;
    const i64 value = eval(ph, l, w, budget, cutoff);
    if (value >= cutoff) {
      throw Error(ErrorKind::internal, "DP optimum exceeds a known lattice vector");
    }

    IntVector x(form.n());
    while (true) {
      const DpValue& e = lookup(ph, l, w, budget);
      const i64 z = e.choice;
      if (ph == DpPhase::sigma_bar) {
        x[k + l - 1] = z;
        for (std::size_t r = 0; r < rows; ++r) w[r] += bcoef(r, l - 1) * z;
      } else {
        x[l - 1] = z;
        for (std::size_t r = 0; r < rows; ++r) w[r] += acoef(r, l - 1) * z;
      }
      if (e.closes) break;
      budget -= iabs(z);
      if (ph == DpPhase::sigma_bar && l == 1) {
        ph = DpPhase::sigma;
        l = k;
        budget = std::min(budget, mp);
      } else {
        --l;
      }
      if (l == 0) throw Error(ErrorKind::internal, "DP replay ran past level 1");
    }

    SvpSolution sol;
    sol.coeffs = form.to_input_coeffs(x);
    sol.vector = form.to_input_rows(f * x);
    sol.norm_p = norm_pow(sol.vector, p);
    sol.method = SvpMethod::dp;
    if (sol.norm_p != Integer(static_cast<long>(value))) {
      throw Error(ErrorKind::internal, "replayed vector has norm^p " +
                                           sol.norm_p.get_str() + ", DP value " +
                                           std::to_string(value));
    }
    return sol;
  }
};

SvpDp::SvpDp(const HnfForm& form, unsigned p, const Integer& delta,
             const SvpBounds& bounds, std::size_t capacity)
    : impl_(std::make_unique<Impl>(form, p, delta, bounds, capacity)) {}

SvpDp::~SvpDp() = default;

DpValue SvpDp::sigma_base(std::span<const std::int64_t> v,
                          std::span<const std::int64_t> u, std::int64_t budget) {
  return sigma(1, v, u, budget);
}

DpValue SvpDp::sigma(std::size_t l, std::span<const std::int64_t> v,
                     std::span<const std::int64_t> u, std::int64_t budget) {
  if (l < 1 || l > impl_->k) {
    throw Error(ErrorKind::range, "sigma level " + std::to_string(l) + " outside 1.." +
                                      std::to_string(impl_->k));
  }
  return impl_->query(DpPhase::sigma, l, v, u, budget);
}

DpValue SvpDp::sigma_bar(std::size_t l, std::span<const std::int64_t> v,
                         std::span<const std::int64_t> u, std::int64_t budget) {
  if (l < 1 || l > impl_->s) {
    throw Error(ErrorKind::range, "sigma_bar level " + std::to_string(l) +
                                      " outside 1.." + std::to_string(impl_->s));
  }
  return impl_->query(DpPhase::sigma_bar, l, v, u, budget);
}

SvpSolution SvpDp::solve() { return impl_->solve(); }

const DpStats& SvpDp::stats() const { return impl_->stats; }

void SvpDp::for_each_state(
    const std::function<void(const DpKey&, const DpValue&)>& fn) const {
  const std::size_t s = impl_->s;
  for (const auto& [key, value] : impl_->memo) {
    DpKey k;
    k.phase = static_cast<DpPhase>(key[0]);
    k.level = static_cast<std::size_t>(key[1]);
    k.budget = key[2];
    k.v.assign(key.begin() + 3, key.begin() + 3 + static_cast<std::ptrdiff_t>(s));
    k.u.assign(key.begin() + 3 + static_cast<std::ptrdiff_t>(s), key.end());
    fn(k, value);
  }
}

}  // namespace fptlat
