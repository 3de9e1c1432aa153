#include "rszeta/mpfp/ball.hpp"

#include <algorithm>

namespace rszeta::mpfp {

namespace {

constexpr mpfr_prec_t R = Ball::kRadPrec;

// |mid| rounded up to radius precision
Mpfr abs_up(mpfr_srcptr x) {
  Mpfr r(R);
  mpfr_abs(r.get(), x, MPFR_RNDU);
  return r;
}

Mpfr abs_down(mpfr_srcptr x) {
  Mpfr r(R);
  mpfr_abs(r.get(), x, MPFR_RNDD);
  return r;
}

mpfr_prec_t join(const Ball& a, const Ball& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Ball::Ball(mpfr_prec_t prec) : mid_(prec) { ensure_mpfr_range(); }

Ball Ball::exact(const Dyadic& x, mpfr_prec_t prec) {
  Ball b(prec);
  int t = mpfr_set_z_2exp(b.mid_.get(), x.mantissa().get_mpz_t(), x.exponent(), MPFR_RNDN);
  b.account_rounding(t);
  return b;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball b(prec);
  b.account_rounding(mpfr_const_pi(b.mid_.get(), MPFR_RNDN));
  return b;
}

Ball Ball::with_radius(const Dyadic& mid, const Dyadic& rad, mpfr_prec_t prec) {
  Ball b = exact(mid, prec);
  return b.add_error(rad.abs());
}

void Ball::account_rounding(int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid_.get())) return;
  Mpfr u(R);
  mpfr_set_ui_2exp(u.get(), 1, mpfr_get_exp(mid_.get()) - mid_.prec(), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), u.get(), MPFR_RNDU);
}

Ball Ball::add_error(const Dyadic& e) const {
  Ball r = *this;
  Mpfr v(R);
  set_mpfr(v.get(), e.abs(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), v.get(), MPFR_RNDU);
  return r;
}

Dyadic Ball::lower() const {
  Mpfr r(std::max(prec(), R) + 70);
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return from_mpfr(r.get());
}

Dyadic Ball::upper() const {
  Mpfr r(std::max(prec(), R) + 70);
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return from_mpfr(r.get());
}

Dyadic Ball::abs_upper() const { return std::max(lower().abs(), upper().abs()); }

Dyadic Ball::abs_lower() const {
  if (contains_zero()) return {};
  return std::min(lower().abs(), upper().abs());
}

bool Ball::contains_zero() const { return lower().sign() <= 0 && upper().sign() >= 0; }

bool Ball::contains(const Dyadic& x) const { return lower() <= x && x <= upper(); }

Ball Ball::operator-() const {
  Ball r = *this;
  mpfr_neg(r.mid_.get(), mid_.get(), MPFR_RNDN);
  return r;
}

Ball Ball::ldexp(long k) const {
  Ball r = *this;
  mpfr_mul_2si(r.mid_.get(), mid_.get(), k, MPFR_RNDN);
  mpfr_mul_2si(r.rad_.get(), rad_.get(), k, MPFR_RNDU);
  return r;
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(join(a, b));
  int t = mpfr_add(r.mid_.get(), a.mid(), b.mid(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad(), b.rad(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(join(a, b));
  int t = mpfr_mul(r.mid_.get(), a.mid(), b.mid(), MPFR_RNDN);
  Mpfr x(R), y(R);
  Mpfr am = abs_up(a.mid()), bm = abs_up(b.mid());
  mpfr_mul(x.get(), am.get(), b.rad(), MPFR_RNDU);
  mpfr_mul(y.get(), bm.get(), a.rad(), MPFR_RNDU);
  mpfr_add(x.get(), x.get(), y.get(), MPFR_RNDU);
  mpfr_mul(y.get(), a.rad(), b.rad(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), x.get(), y.get(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball operator/(const Ball& a, const Ball& b) {
  Mpfr bl = abs_down(b.mid());
  Mpfr gap(R);
  mpfr_sub(gap.get(), bl.get(), b.rad(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) throw DomainError("Ball: division by a ball containing 0");
  Ball r(join(a, b));
  int t = mpfr_div(r.mid_.get(), a.mid(), b.mid(), MPFR_RNDN);
  Mpfr num(R), y(R), den(R);
  Mpfr am = abs_up(a.mid()), bm = abs_up(b.mid());
  mpfr_mul(num.get(), am.get(), b.rad(), MPFR_RNDU);
  mpfr_mul(y.get(), bm.get(), a.rad(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), y.get(), MPFR_RNDU);
  mpfr_mul(den.get(), bl.get(), gap.get(), MPFR_RNDD);
  mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball sqrt(const Ball& x) {
  Mpfr gap(R);
  mpfr_sub(gap.get(), x.mid(), x.rad(), MPFR_RNDD);
  Ball r(x.prec());
  int t = mpfr_sqrt(r.mid_.get(), x.mid(), MPFR_RNDN);
  if (mpfr_zero_p(x.rad())) {
    if (mpfr_sgn(x.mid()) < 0) throw DomainError("Ball: sqrt of negative");
  } else {
    if (mpfr_sgn(gap.get()) <= 0) throw DomainError("Ball: sqrt of a ball touching 0");
    Mpfr den(R);
    mpfr_sqrt(den.get(), gap.get(), MPFR_RNDD);
    mpfr_mul_2ui(den.get(), den.get(), 1, MPFR_RNDD);
    mpfr_div(r.rad_.get(), x.rad(), den.get(), MPFR_RNDU);
  }
  r.account_rounding(t);
  return r;
}

Ball exp(const Ball& x) {
  Ball r(x.prec());
  int t = mpfr_exp(r.mid_.get(), x.mid(), MPFR_RNDN);
  if (!mpfr_zero_p(x.rad())) {
    Mpfr e(R), m(R);
    mpfr_exp(e.get(), x.mid(), MPFR_RNDU);
    mpfr_expm1(m.get(), x.rad(), MPFR_RNDU);
    mpfr_mul(r.rad_.get(), e.get(), m.get(), MPFR_RNDU);
  }
  r.account_rounding(t);
  return r;
}

Ball log(const Ball& x) {
  Mpfr gap(R);
  mpfr_sub(gap.get(), x.mid(), x.rad(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) throw DomainError("Ball: log of a ball touching 0");
  Ball r(x.prec());
  int t = mpfr_log(r.mid_.get(), x.mid(), MPFR_RNDN);
  if (!mpfr_zero_p(x.rad())) mpfr_div(r.rad_.get(), x.rad(), gap.get(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball sin(const Ball& x) {
  Ball r(x.prec());
  int t = mpfr_sin(r.mid_.get(), x.mid(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), x.rad(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball cos(const Ball& x) {
  Ball r(x.prec());
  int t = mpfr_cos(r.mid_.get(), x.mid(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), x.rad(), MPFR_RNDU);
  r.account_rounding(t);
  return r;
}

Ball atan2(const Ball& y, const Ball& x) {
  if (x.lower().sign() <= 0 && y.contains_zero()) throw DomainError("Ball: atan2 across the branch cut");
  Ball r(join(x, y));
  int t = mpfr_atan2(r.mid_.get(), y.mid(), x.mid(), MPFR_RNDN);
  if (!mpfr_zero_p(x.rad()) || !mpfr_zero_p(y.rad())) {
    Mpfr lx(R), ly(R), n(R), s(R);
    set_mpfr(lx.get(), x.abs_lower(), MPFR_RNDD);
    set_mpfr(ly.get(), y.abs_lower(), MPFR_RNDD);
    mpfr_sqr(lx.get(), lx.get(), MPFR_RNDD);
    mpfr_sqr(ly.get(), ly.get(), MPFR_RNDD);
    mpfr_add(n.get(), lx.get(), ly.get(), MPFR_RNDD);
    mpfr_sqrt(n.get(), n.get(), MPFR_RNDD);
    if (mpfr_sgn(n.get()) <= 0) throw DomainError("Ball: atan2 near the origin");
    mpfr_add(s.get(), x.rad(), y.rad(), MPFR_RNDU);
    mpfr_div(r.rad_.get(), s.get(), n.get(), MPFR_RNDU);
  }
  r.account_rounding(t);
  return r;
}

std::optional<Dyadic> Ball::round_if_determined(Prec p) const {
  if (mpfr_zero_p(rad_.get())) return round_even(mid_dyadic(), p);
  Dyadic a = round_even(lower(), p), b = round_even(upper(), p);
  if (a == b) return a;
  return std::nullopt;
}

CBall operator/(const CBall& a, const CBall& b) {
  Ball n = b.norm();
  CBall num = a * b.conj();
  return {num.re / n, num.im / n};
}

Dyadic CBall::abs_upper() const {
  Mpfr x(R), y(R);
  set_mpfr(x.get(), re.abs_upper(), MPFR_RNDU);
  set_mpfr(y.get(), im.abs_upper(), MPFR_RNDU);
  mpfr_hypot(x.get(), x.get(), y.get(), MPFR_RNDU);
  return from_mpfr(x.get());
}

Dyadic CBall::rad_upper() const { return std::max(re.rad_dyadic(), im.rad_dyadic()); }

std::optional<ComplexDyadic> CBall::round_if_determined(Prec p) const {
  auto r = re.round_if_determined(p);
  if (!r) return std::nullopt;
  auto i = im.round_if_determined(p);
  if (!i) return std::nullopt;
  return ComplexDyadic{*r, *i};
}

CBall exp(const CBall& z) {
  Ball e = exp(z.re);
  return {e * cos(z.im), e * sin(z.im)};
}

CBall log(const CBall& z) {
  Ball half_log_norm = log(z.norm()).ldexp(-1);
  return {half_log_norm, atan2(z.im, z.re)};
}

}  // namespace rszeta::mpfp
