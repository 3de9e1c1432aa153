#include "rszeta/mpfp/elementary.hpp"

#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/mpfr.hpp"

namespace rszeta::mpfp {

namespace {

using Fn1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Dyadic apply(Fn1 f, const Dyadic& x, Prec p) {
  Mpfr in = to_mpfr(x);
  Mpfr out(static_cast<mpfr_prec_t>(std::max<unsigned long>(p.d, 2)));
  f(out.get(), in.get(), MPFR_RNDN);
  Dyadic r = from_mpfr(out.get());
  // MPFR cannot go below 2 bits; finish the job for d = 1
  return p.d < 2 ? round_even(r, p) : r;
}

// Widening cap for the enclosure loops.
constexpr unsigned long kMaxExtraBits = 1ul << 16;

}  // namespace

Dyadic pi(Prec p) {
  ensure_mpfr_range();
  Mpfr out(static_cast<mpfr_prec_t>(std::max<unsigned long>(p.d, 2)));
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return p.d < 2 ? round_even(from_mpfr(out.get()), p) : from_mpfr(out.get());
}

Dyadic exp(const Dyadic& x, Prec p) { return apply(mpfr_exp, x, p); }

Dyadic log(const Dyadic& x, Prec p) {
  if (x.sign() <= 0) throw DomainError("log of non-positive number");
  return apply(mpfr_log, x, p);
}

Dyadic sin(const Dyadic& x, Prec p) { return apply(mpfr_sin, x, p); }
Dyadic cos(const Dyadic& x, Prec p) { return apply(mpfr_cos, x, p); }

Dyadic pow(const Dyadic& x, const Dyadic& y, Prec p) {
  if (x.sign() <= 0) throw DomainError("pow needs a positive base");
  Mpfr a = to_mpfr(x), b = to_mpfr(y);
  Mpfr out(static_cast<mpfr_prec_t>(std::max<unsigned long>(p.d, 2)));
  mpfr_pow(out.get(), a.get(), b.get(), MPFR_RNDN);
  return p.d < 2 ? round_even(from_mpfr(out.get()), p) : from_mpfr(out.get());
}

Dyadic atan2(const Dyadic& y, const Dyadic& x, Prec p) {
  Mpfr a = to_mpfr(y), b = to_mpfr(x);
  Mpfr out(static_cast<mpfr_prec_t>(std::max<unsigned long>(p.d, 2)));
  mpfr_atan2(out.get(), a.get(), b.get(), MPFR_RNDN);
  return p.d < 2 ? round_even(from_mpfr(out.get()), p) : from_mpfr(out.get());
}

ComplexDyadic exp(const ComplexDyadic& z, Prec p) {
  if (z.im.is_zero()) return {exp(z.re, p), Dyadic()};
  for (unsigned long extra = 32; extra <= kMaxExtraBits; extra *= 2) {
    auto w = static_cast<mpfr_prec_t>(p.d + extra);
    CBall e = exp(CBall::exact(z, w));
    if (auto r = e.round_if_determined(p)) return *r;
  }
  throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification,
                              "complex exp: rounding not decided within the widening cap");
}

Dyadic trunc_a(const Dyadic& t, Prec p) {
  if (t.sign() <= 0) throw DomainError("trunc_a: t must be positive");
  Prec w(p.d + 2);
  Dyadic twopi = pi(w).ldexp(1);
  Dyadic q = div(t, twopi, w);
  return sqrt(q, w);
}

}  // namespace rszeta::mpfp
