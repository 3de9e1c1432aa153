#include "rszeta/mpfp/mpfr.hpp"

#include <algorithm>

namespace rszeta::mpfp {

void ensure_mpfr_range() {
  // the exponent range is per thread in thread-safe MPFR builds
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    done = true;
  }
}

Mpfr to_mpfr(const Dyadic& x, mpfr_prec_t min_prec) {
  ensure_mpfr_range();
  auto bits = static_cast<mpfr_prec_t>(std::max<uint64_t>(x.bitcount(), 2));
  Mpfr r(std::max(bits, min_prec));
  mpfr_set_z_2exp(r.get(), x.mantissa().get_mpz_t(), x.exponent(), MPFR_RNDN);
  return r;
}

void set_mpfr(mpfr_ptr out, const Dyadic& x, mpfr_rnd_t rnd) {
  ensure_mpfr_range();
  mpfr_set_z_2exp(out, x.mantissa().get_mpz_t(), x.exponent(), rnd);
}

Dyadic from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return {};
  if (!mpfr_number_p(x)) throw DomainError("non-finite MPFR value");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Dyadic::from_parts(m, e);
}

}  // namespace rszeta::mpfp
