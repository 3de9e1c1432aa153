#include "rszeta/mpfp/bound.hpp"

#include <sstream>

namespace rszeta::mpfp {

namespace {

constexpr mpfr_prec_t P = Bound::kScratch;

Mpfr make() {
  ensure_mpfr_range();
  return Mpfr(P);
}

using Fn1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

}  // namespace

Bound::Bound(long v) {
  ensure_mpfr_range();
  mpfr_set_si(lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(hi_.get(), v, MPFR_RNDU);
}

Bound::Bound(const Dyadic& v) {
  set_mpfr(lo_.get(), v, MPFR_RNDD);
  set_mpfr(hi_.get(), v, MPFR_RNDU);
}

Bound Bound::between(const Dyadic& lo, const Dyadic& hi) {
  if (hi < lo) throw PreconditionError("Bound::between: empty interval");
  Mpfr l = make(), h = make();
  set_mpfr(l.get(), lo, MPFR_RNDD);
  set_mpfr(h.get(), hi, MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Bound Bound::rational(long num, long den) { return Bound(num) / Bound(den); }

Bound Bound::pi() {
  Mpfr l = make(), h = make();
  mpfr_const_pi(l.get(), MPFR_RNDD);
  mpfr_const_pi(h.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Bound Bound::e() { return exp(Bound(1)); }

Bound Bound::log2() {
  Mpfr l = make(), h = make();
  mpfr_const_log2(l.get(), MPFR_RNDD);
  mpfr_const_log2(h.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Bound Bound::euler_gamma_min() {
  // min of Gamma on (0,inf) is 0.8856031944...
  return Bound::rational(8856, 10000);
}

double Bound::approx() const {
  return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN));
}

std::string Bound::str() const {
  std::ostringstream os;
  os << "[" << mpfr_get_d(lo_.get(), MPFR_RNDD) << ", " << mpfr_get_d(hi_.get(), MPFR_RNDU) << "]";
  return os.str();
}

Bound Bound::operator-() const {
  Mpfr l = make(), h = make();
  mpfr_neg(l.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(h.get(), lo_.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Bound operator+(const Bound& a, const Bound& b) {
  Mpfr l = make(), h = make();
  mpfr_add(l.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(h.get(), a.hi(), b.hi(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Bound operator-(const Bound& a, const Bound& b) { return a + (-b); }

Bound operator*(const Bound& a, const Bound& b) {
  Mpfr l = make(), h = make(), t = make();
  mpfr_srcptr ae[2] = {a.lo(), a.hi()};
  mpfr_srcptr be[2] = {b.lo(), b.hi()};
  bool first = true;
  for (auto x : ae) {
    for (auto y : be) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), l.get())) mpfr_set(l.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), h.get())) mpfr_set(h.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(l), std::move(h)};
}

Bound operator/(const Bound& a, const Bound& b) {
  if (mpfr_sgn(b.lo()) <= 0 && mpfr_sgn(b.hi()) >= 0) throw DomainError("Bound: division by interval containing 0");
  Mpfr l = make(), h = make(), t = make();
  mpfr_srcptr ae[2] = {a.lo(), a.hi()};
  mpfr_srcptr be[2] = {b.lo(), b.hi()};
  bool first = true;
  for (auto x : ae) {
    for (auto y : be) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), l.get())) mpfr_set(l.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), h.get())) mpfr_set(h.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(l), std::move(h)};
}

namespace {

Bound monotone_up(const Bound& x, Fn1 f) {
  Mpfr l = make(), h = make();
  f(l.get(), x.lo(), MPFR_RNDD);
  f(h.get(), x.hi(), MPFR_RNDU);
  return Bound::between(from_mpfr(l.get()), from_mpfr(h.get()));
}

Bound monotone_down(const Bound& x, Fn1 f) {
  Mpfr l = make(), h = make();
  f(l.get(), x.hi(), MPFR_RNDD);
  f(h.get(), x.lo(), MPFR_RNDU);
  return Bound::between(from_mpfr(l.get()), from_mpfr(h.get()));
}

// Gamma and lgamma share the minimum at 1.4616...
Bound unimodal(const Bound& x, Fn1 f, const Bound& min_value) {
  if (mpfr_sgn(x.lo()) <= 0) throw DomainError("gamma bound needs positive argument");
  if (mpfr_cmp_d(x.lo(), 1.47) >= 0) return monotone_up(x, f);
  if (mpfr_cmp_d(x.hi(), 1.46) <= 0) return monotone_down(x, f);
  Mpfr a = make(), b = make();
  f(a.get(), x.lo(), MPFR_RNDU);
  f(b.get(), x.hi(), MPFR_RNDU);
  Dyadic top = std::max(from_mpfr(a.get()), from_mpfr(b.get()));
  return Bound::between(min_value.lower(), top);
}

int lngamma_fn(mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { return mpfr_lngamma(r, x, rnd); }

}  // namespace

Bound sqrt(const Bound& x) {
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("sqrt of negative bound");
  return monotone_up(x, mpfr_sqrt);
}

Bound log(const Bound& x) {
  if (mpfr_sgn(x.lo()) <= 0) throw DomainError("log of non-positive bound");
  return monotone_up(x, mpfr_log);
}

Bound exp(const Bound& x) { return monotone_up(x, mpfr_exp); }

Bound pow(const Bound& x, const Bound& y) { return exp(y * log(x)); }

Bound pow(const Bound& x, long n) {
  if (n == 0) return Bound(1);
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("pow of negative bound");
  if (n < 0 && mpfr_sgn(x.lo()) == 0) throw DomainError("negative power of zero");
  Mpfr l = make(), h = make();
  if (n > 0) {
    mpfr_pow_si(l.get(), x.lo(), n, MPFR_RNDD);
    mpfr_pow_si(h.get(), x.hi(), n, MPFR_RNDU);
  } else {
    mpfr_pow_si(l.get(), x.hi(), n, MPFR_RNDD);
    mpfr_pow_si(h.get(), x.lo(), n, MPFR_RNDU);
  }
  return {std::move(l), std::move(h)};
}

Bound gamma(const Bound& x) { return unimodal(x, mpfr_gamma, Bound::euler_gamma_min()); }

Bound lgamma(const Bound& x) { return unimodal(x, lngamma_fn, log(Bound::euler_gamma_min())); }

Bound abs(const Bound& x) {
  if (mpfr_sgn(x.lo()) >= 0) return x;
  if (mpfr_sgn(x.hi()) <= 0) return -x;
  Dyadic top = std::max(-x.lower(), x.upper());
  return Bound::between(Dyadic(0), top);
}

Bound max(const Bound& a, const Bound& b) {
  return Bound::between(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
}

Bound min(const Bound& a, const Bound& b) {
  return Bound::between(std::min(a.lower(), b.lower()), std::min(a.upper(), b.upper()));
}

Bound cosh(const Bound& x) { return monotone_up(abs(x), mpfr_cosh); }

bool Bound::certainly_lt(const Bound& o) const { return mpfr_less_p(hi_.get(), o.lo()); }
bool Bound::certainly_le(const Bound& o) const { return mpfr_lessequal_p(hi_.get(), o.lo()); }
bool Bound::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

bool Bound::contains(const Dyadic& x) const {
  Mpfr v = to_mpfr(x);
  return mpfr_lessequal_p(lo_.get(), v.get()) && mpfr_lessequal_p(v.get(), hi_.get());
}

int64_t Bound::mag_upper() const {
  if (mpfr_sgn(hi_.get()) <= 0) throw DomainError("mag of non-positive bound");
  return mpfr_get_exp(hi_.get());
}

int64_t Bound::mag_lower() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw DomainError("mag of non-positive bound");
  return mpfr_get_exp(lo_.get());
}

Bound factorial(unsigned long n) {
  Mpfr l = make(), h = make();
  mpfr_fac_ui(l.get(), n, MPFR_RNDD);
  mpfr_fac_ui(h.get(), n, MPFR_RNDU);
  return Bound::between(from_mpfr(l.get()), from_mpfr(h.get()));
}

}  // namespace rszeta::mpfp
