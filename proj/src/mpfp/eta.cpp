#include "rszeta/mpfp/eta.hpp"

namespace rszeta::mpfp {

namespace {

// 1.06 rounded up to 20 fractional bits
const Dyadic& k106() {
  static const Dyadic v = Dyadic::from_parts(mpz_class(1111491), -20);
  return v;
}

bool within_lemma(unsigned long r, unsigned long d) {
  // r*2^-d <= 1/10  <=>  10r <= 2^d
  mpz_class lhs(r);
  lhs *= 10;
  mpz_class rhs = 1;
  rhs <<= d;
  return lhs <= rhs;
}

}  // namespace

Dyadic eta_bound(unsigned long r, unsigned long d) {
  if (!within_lemma(r, d)) throw PreconditionError("eta_bound: r*2^-d exceeds 0.1");
  if (r == 0) return {};
  return k106() * Dyadic(static_cast<long>(r)) * Dyadic::pow2(-static_cast<int64_t>(d));
}

EtaBudget EtaBudget::demote(unsigned long d2) const {
  if (d2 > d) throw PreconditionError("EtaBudget::demote: target precision is finer");
  return {r, d2};
}

bool EtaBudget::bounded() const { return within_lemma(r, d); }

}  // namespace rszeta::mpfp
