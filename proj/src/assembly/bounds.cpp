#include "rszeta/assembly/bounds.hpp"

#include "rszeta/mpfp/errors.hpp"

namespace rszeta::assembly {

namespace {

Bound twopi() { return Bound(2) * Bound::pi(); }

void need_t(const Dyadic& t, const Bound& lo, const char* what) {
  if (!lo.certainly_lt(Bound(t))) throw PreconditionError(what);
}

Bound left_common(const Dyadic& sigma, const Dyadic& t) {
  Bound s(sigma), tt(t);
  Bound one_minus = Bound(1) - s;
  Bound base = one_minus * one_minus + tt * tt;
  return pow(base, Bound::rational(1, 4) - s / Bound(2)) / pow(twopi(), one_minus);
}

}  // namespace

Bound R_bound(const Dyadic& sigma, const Dyadic& t) {
  need_t(t, Bound(16) * Bound::pi(), "R bound needs t > 16 pi");
  if (sigma.sign() > 0) return Bound(2) * sqrt(Bound(t) / twopi());
  return Bound(4) * Bound(t) * left_common(sigma, t);
}

Bound chi_bound(const Dyadic& sigma, const Dyadic& t) {
  need_t(t, Bound::rational(1, 2), "chi bound needs t > 1/2");
  Bound s(sigma), tt(t);
  Bound right = pow(s * s + tt * tt, Bound::rational(1, 4));
  if (sigma.sign() > 0) {
    Bound e = exp(Bound(1));
    if (!(Bound(2) * Bound::pi() * e).certainly_le(sqrt(s * s + tt * tt)))
      throw PreconditionError("chi bound needs |s| >= 2 pi e");
    return right;
  }
  if (sigma.sign() < 0) return left_common(sigma, t);
  return left_common(sigma, t);  // the limit from the left, smaller than the other one here
}

Bound theta_bound(const Dyadic& re, const Dyadic& im) {
  Bound r(re), i(im);
  Bound m = sqrt(r * r + i * i);
  if (!Bound(4).certainly_lt(m) || !Bound(1).certainly_le(abs(r)))
    throw PreconditionError("theta bound needs |w| > 4 and |Re w| >= 1");
  return Bound(2) * m * log(m);
}

ZetaBounds zeta_bounds(const Dyadic& sigma, const Dyadic& t) {
  ZetaBounds z;
  z.M1 = R_bound(sigma, t);
  z.M2 = R_bound(Dyadic(1) - sigma, t);
  z.X = chi_bound(sigma, t);
  z.T = theta_bound(t, Dyadic::pow2(-1) - sigma);
  return z;
}

}  // namespace rszeta::assembly
