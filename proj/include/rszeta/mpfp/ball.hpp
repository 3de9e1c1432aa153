#pragma once
#include <optional>

#include "rszeta/mpfp/dyadic.hpp"
#include "rszeta/mpfp/mpfr.hpp"

namespace rszeta::mpfp {

// Midpoint at working precision plus a radius rounded up. The true value lies in
// [mid - rad, mid + rad].
class Ball {
 public:
  static constexpr mpfr_prec_t kRadPrec = 64;

  explicit Ball(mpfr_prec_t prec = 64);
  static Ball exact(const Dyadic& x, mpfr_prec_t prec);
  static Ball pi(mpfr_prec_t prec);
  static Ball with_radius(const Dyadic& mid, const Dyadic& rad, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mid_.prec(); }
  mpfr_srcptr mid() const { return mid_.get(); }
  mpfr_srcptr rad() const { return rad_.get(); }
  Dyadic mid_dyadic() const { return from_mpfr(mid_.get()); }
  Dyadic rad_dyadic() const { return from_mpfr(rad_.get()); }
  Dyadic lower() const;
  Dyadic upper() const;
  // upper bound for |x|, lower bound for |x| (0 if the ball touches 0)
  Dyadic abs_upper() const;
  Dyadic abs_lower() const;
  bool contains_zero() const;
  bool contains(const Dyadic& x) const;

  Ball operator-() const;
  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  Ball& operator+=(const Ball& b) { return *this = *this + b; }
  Ball ldexp(long k) const;
  // widen the radius by e >= 0
  Ball add_error(const Dyadic& e) const;

  friend Ball sqrt(const Ball& x);
  friend Ball exp(const Ball& x);
  friend Ball log(const Ball& x);
  friend Ball sin(const Ball& x);
  friend Ball cos(const Ball& x);
  friend Ball atan2(const Ball& y, const Ball& x);

  // The value round_even(v, d) shared by every point v of the ball, if any.
  std::optional<Dyadic> round_if_determined(Prec p) const;

 private:
  // add the rounding error of an inexact midpoint operation
  void account_rounding(int ternary);
  Mpfr mid_;
  Mpfr rad_{kRadPrec};
};

struct CBall {
  Ball re, im;
  explicit CBall(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
  static CBall exact(const ComplexDyadic& z, mpfr_prec_t prec) {
    return {Ball::exact(z.re, prec), Ball::exact(z.im, prec)};
  }
  mpfr_prec_t prec() const { return re.prec(); }
  CBall conj() const { return {re, -im}; }
  CBall operator-() const { return {-re, -im}; }
  CBall times_i() const { return {-im, re}; }
  friend CBall operator+(const CBall& a, const CBall& b) { return {a.re + b.re, a.im + b.im}; }
  friend CBall operator-(const CBall& a, const CBall& b) { return {a.re - b.re, a.im - b.im}; }
  friend CBall operator*(const CBall& a, const CBall& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CBall operator*(const Ball& x, const CBall& a) { return {x * a.re, x * a.im}; }
  friend CBall operator/(const CBall& a, const CBall& b);
  CBall ldexp(long k) const { return {re.ldexp(k), im.ldexp(k)}; }
  // upper bound for |z|
  Dyadic abs_upper() const;
  // squared modulus as a ball
  Ball norm() const { return re * re + im * im; }
  Dyadic rad_upper() const;  // max of the component radii
  ComplexDyadic mid() const { return {re.mid_dyadic(), im.mid_dyadic()}; }
  std::optional<ComplexDyadic> round_if_determined(Prec p) const;
};

CBall exp(const CBall& z);
// principal branch; z must stay away from the non-positive real axis
CBall log(const CBall& z);

}  // namespace rszeta::mpfp
