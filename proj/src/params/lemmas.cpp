#include "rszeta/params/lemmas.hpp"

#include <cmath>
#include <vector>

#include "rszeta/mpfp/mpfr.hpp"

namespace rszeta::params {

using mpfp::Mpfr;

namespace {

constexpr mpfr_prec_t W = 256;

// outward interval at 256 bits; just enough for the scans
struct Iv {
  Mpfr lo{W}, hi{W};

  static Iv of(const Dyadic& x) {
    Iv r;
    mpfp::set_mpfr(r.lo.get(), x, MPFR_RNDD);
    mpfp::set_mpfr(r.hi.get(), x, MPFR_RNDU);
    return r;
  }
  static Iv of(long v) { return of(Dyadic(v)); }
  static Iv rat(long p, long q) { return of(p) / of(q); }
  static Iv pi() {
    Iv r;
    mpfr_const_pi(r.lo.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi.get(), MPFR_RNDU);
    return r;
  }

  friend Iv operator+(const Iv& a, const Iv& b) {
    Iv r;
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
  }
  friend Iv operator-(const Iv& a, const Iv& b) {
    Iv r;
    mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return r;
  }
  template <class F>
  static Iv corners(const Iv& a, const Iv& b, F f) {
    Iv r;
    Mpfr t(W);
    mpfr_srcptr ae[2] = {a.lo.get(), a.hi.get()}, be[2] = {b.lo.get(), b.hi.get()};
    bool first = true;
    for (auto x : ae)
      for (auto y : be) {
        f(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
        f(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  friend Iv operator*(const Iv& a, const Iv& b) { return corners(a, b, mpfr_mul); }
  friend Iv operator/(const Iv& a, const Iv& b) {
    if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) throw DomainError("Iv: division by 0");
    return corners(a, b, mpfr_div);
  }
  Iv up(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
    Iv r;
    f(r.lo.get(), lo.get(), MPFR_RNDD);
    f(r.hi.get(), hi.get(), MPFR_RNDU);
    return r;
  }
  Iv log() const {
    if (mpfr_sgn(lo.get()) <= 0) throw DomainError("Iv: log of non-positive");
    return up(mpfr_log);
  }
  Iv exp() const { return up(mpfr_exp); }
  Iv sqrt() const { return up(mpfr_sqrt); }
  Iv lgamma() const {
    if (mpfr_sgn(lo.get()) <= 0) throw DomainError("Iv: lgamma needs x > 0");
    if (mpfr_cmp_d(lo.get(), 1.47) >= 0) return up(lng);
    Iv r;
    if (mpfr_cmp_d(hi.get(), 1.46) <= 0) {
      lng(r.lo.get(), hi.get(), MPFR_RNDD);
      lng(r.hi.get(), lo.get(), MPFR_RNDU);
      return r;
    }
    // straddles the minimum -0.12148629...
    Mpfr a(W), b(W);
    lng(a.get(), lo.get(), MPFR_RNDU);
    lng(b.get(), hi.get(), MPFR_RNDU);
    mpfr_max(r.hi.get(), a.get(), b.get(), MPFR_RNDU);
    mpfr_set_d(r.lo.get(), -0.1215, MPFR_RNDD);
    return r;
  }
  Enclosure enc() const { return {mpfp::from_mpfr(lo.get()), mpfp::from_mpfr(hi.get())}; }

  static int lng(mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) {
    int sign = 0;
    return mpfr_lgamma(r, &sign, x, rnd);
  }
};

Iv log_gamma_ratio_one(const Iv& x) {
  Iv one = Iv::of(1), x1 = x + one;
  Iv e4 = Iv::of(4);  // log e^4
  Iv inner = Iv::of(4) * x1.log() - Iv::of(3).log() - e4;
  return (x1).lgamma() + (x / Iv::of(3) + Iv::of(2)).lgamma() - Iv::of(2) * x1.log() - x / Iv::of(3) * inner;
}

Iv log_gamma_ratio_two(const Iv& x) {
  Iv three = Iv::of(3), half = Iv::rat(1, 2);
  Iv a = (x / three + Iv::rat(7, 3)).lgamma() - (x / three + Iv::of(2)).lgamma() + Iv::rat(3, 2).log();
  Iv b = (x / Iv::of(2) + Iv::of(1)).lgamma() - (x / Iv::of(2) + Iv::rat(3, 2)).lgamma();
  Iv c = ((x + Iv::of(1)) / three).log() / three;
  return half * a + b + c;
}

Iv log_f(const Iv& x) {
  Iv half = Iv::rat(1, 2);
  Iv twopi = Iv::of(2) * Iv::pi();
  return x * Iv::of(5).log() - (x - Iv::of(1)) * half * twopi.log() - (x * half + half).lgamma() +
         half * ((x + Iv::of(1)).lgamma() - (x / Iv::of(3) + Iv::of(2)).lgamma());
}

std::vector<Dyadic> log_grid(std::size_t n, double lo, double hi) {
  std::vector<Dyadic> g;
  if (n == 0) return g;
  double r = n > 1 ? std::log(hi / lo) / static_cast<double>(n - 1) : 0;
  for (std::size_t i = 0; i < n; ++i) g.push_back(Dyadic::from_double(lo * std::exp(r * static_cast<double>(i))));
  return g;
}

void fail(ScanReport& r, const Dyadic& x) {
  if (r.failures++ == 0) r.first_failure = x.to_double();
}

}  // namespace

Enclosure gamma_ratio_one(const Dyadic& x) { return log_gamma_ratio_one(Iv::of(x)).exp().enc(); }

Enclosure gamma_ratio_one_floor() {
  Iv v = Iv::of(2) * Iv::pi() / (Iv::of(3) * Iv::of(3).sqrt() * Iv::rat(4, 3).exp());
  return v.enc();
}

Enclosure gamma_ratio_two(const Dyadic& x) { return log_gamma_ratio_two(Iv::of(x)).exp().enc(); }

Enclosure gamma_ratio_two_ceiling() {
  // 3^(7/6) sqrt(pi Gamma(10/3)) / 2^(10/3)
  Iv l = Iv::rat(7, 6) * Iv::of(3).log() + Iv::rat(1, 2) * (Iv::pi().log() + Iv::rat(10, 3).lgamma()) -
         Iv::rat(10, 3) * Iv::of(2).log();
  return l.exp().enc();
}

Enclosure log_f_increasing(const Dyadic& x) { return log_f(Iv::of(x)).enc(); }

ScanReport scan_gamma_ratio_one(std::size_t n, double lo, double hi) {
  ScanReport r;
  Enclosure floor = gamma_ratio_one_floor();
  for (const auto& x : log_grid(n, lo, hi)) {
    ++r.points;
    Enclosure v = gamma_ratio_one(x);
    if (!(floor.hi < v.lo && v.hi < Dyadic(1))) fail(r, x);
  }
  return r;
}

ScanReport scan_gamma_ratio_two(std::size_t n, double lo, double hi) {
  ScanReport r;
  Enclosure top = gamma_ratio_two_ceiling();
  for (const auto& x : log_grid(n, lo, hi)) {
    ++r.points;
    Enclosure v = gamma_ratio_two(x);
    // at x = 3 the ratio equals the ceiling; overlap of the enclosures is the best possible verdict
    bool below = x == Dyadic(3) ? !(top.hi < v.lo) : v.hi <= top.lo;
    if (!(Dyadic(1) < v.lo && below)) fail(r, x);
  }
  return r;
}

ScanReport scan_f_increasing(std::size_t n, double lo, double hi) {
  ScanReport r;
  bool have = false;
  Enclosure prev;
  for (const auto& x : log_grid(n, lo, hi)) {
    ++r.points;
    Enclosure v = log_f_increasing(x);
    if (have && !(prev.hi < v.lo)) fail(r, x);
    prev = v;
    have = true;
  }
  return r;
}

}  // namespace rszeta::params
