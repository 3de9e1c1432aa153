#include "rszeta/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rszeta/assembly/theta.hpp"
#include "rszeta/mpfp/bernoulli.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/errors.hpp"

namespace rszeta::oracle {

using mpfp::Ball;
using mpfp::Bound;

namespace {

constexpr mpfr_prec_t kMaxPrec = mpfr_prec_t(1) << 18;

Ball num(long n, mpfr_prec_t q) { return Ball::exact(Dyadic(n), q); }

Ball rational(const mpq_class& x, mpfr_prec_t q) {
  return Ball::exact(Dyadic(mpz_class(x.get_num())), q) / Ball::exact(Dyadic(mpz_class(x.get_den())), q);
}

// 4 |(s)_2M| / (2 pi)^2M * N^(1-sigma-2M) / (sigma+2M-1)
Bound remainder(const ComplexDyadic& s, unsigned long N, unsigned long M) {
  Bound sig(s.re), t(s.im);
  if (!(sig + Bound(static_cast<long>(2 * M)) - Bound(1)).certainly_positive()) return Bound(Dyadic::pow2(1 << 20));
  Bound r(4);
  Bound twopiN = Bound(2) * Bound::pi() * Bound(static_cast<long>(N));
  for (unsigned long j = 0; j < 2 * M; ++j) {
    Bound x = sig + Bound(static_cast<long>(j));
    r = r * sqrt(x * x + t * t) / twopiN;
  }
  return r * pow(Bound(static_cast<long>(N)), Bound(1) - sig) / (sig + Bound(static_cast<long>(2 * M)) - Bound(1));
}

}  // namespace

CBall em_zeta_ball(const ComplexDyadic& s, mpfr_prec_t q, EMParams* used) {
  if (s.re == Dyadic(1) && s.im.is_zero()) throw DomainError("zeta has a pole at s = 1");
  double sabs = std::hypot(s.re.to_double(), s.im.to_double());
  unsigned long M = static_cast<unsigned long>(q / 2 + 10);
  unsigned long N = 0;
  Bound target(Dyadic::pow2(-static_cast<int64_t>(q)));
  for (;;) {
    N = static_cast<unsigned long>((sabs + 2.0 * M) / M_PI) + 2;
    if (remainder(s, N, M).certainly_lt(target)) break;
    M += 8;
  }
  Bound rem = remainder(s, N, M);

  CBall sb = CBall::exact(s, q);
  CBall one(num(1, q), num(0, q));
  CBall sum(num(0, q), num(0, q));
  // n^-s = exp(-s log n)
  auto npow = [&](unsigned long n) { return exp(-(log(num(static_cast<long>(n), q)) * sb)); };
  for (unsigned long n = 1; n < N; ++n) sum = sum + npow(n);
  CBall Ns = npow(N);
  Ball Nb = num(static_cast<long>(N), q);
  sum = sum + (Nb * Ns) / (sb - one);
  sum = sum + Ns.ldexp(-1);
  // B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1)
  auto B = mpfp::bernoulli_even(static_cast<unsigned>(M + 1));
  CBall rising = sb;
  Ball invN = num(1, q) / Nb, invN2 = invN * invN;
  CBall npw = invN * Ns;
  mpz_class fact = 2;
  for (unsigned long k = 1; k <= M; ++k) {
    sum = sum + rational(mpq_class((*B)[k] / fact), q) * (rising * npw);
    CBall a = sb + CBall(num(static_cast<long>(2 * k - 1), q), num(0, q));
    CBall b = sb + CBall(num(static_cast<long>(2 * k), q), num(0, q));
    rising = rising * a * b;
    npw = invN2 * npw;
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  if (used) *used = {N, M, q};
  Dyadic e = rem.upper();
  return {sum.re.add_error(e), sum.im.add_error(e)};
}

ComplexApprox em_zeta(const ComplexDyadic& s, const Dyadic& eps, EMParams* used) {
  if (eps.sign() <= 0) throw PreconditionError("em_zeta needs eps > 0");
  const int64_t bits = -mpfp::mag(eps) + 4;
  double ta = std::abs(s.im.to_double()) + std::abs(s.re.to_double()) + 2;
  mpfr_prec_t q = std::max<mpfr_prec_t>(64, bits + 16 + static_cast<mpfr_prec_t>(std::log2(ta) * 2));
  Dyadic half = eps.ldexp(-1);
  for (; q <= kMaxPrec; q *= 2) {
    CBall z = em_zeta_ball(s, q, used);
    if (z.rad_upper() <= half.ldexp(-1)) {
      ComplexDyadic v(assembly::round_abs(z.re.mid_dyadic(), bits), assembly::round_abs(z.im.mid_dyadic(), bits));
      return {v, eps};
    }
  }
  throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification, "em_zeta: enclosure too wide");
}

RealApprox em_Z(const Dyadic& t, const Dyadic& eps) {
  if (eps.sign() <= 0) throw PreconditionError("em_Z needs eps > 0");
  const int64_t bits = -mpfp::mag(eps) + 4;
  double ta = std::abs(t.to_double()) + 2;
  mpfr_prec_t q = std::max<mpfr_prec_t>(64, bits + 16 + static_cast<mpfr_prec_t>(std::log2(ta) * 2));
  ComplexDyadic s(Dyadic::pow2(-1), t);
  for (; q <= kMaxPrec; q *= 2) {
    CBall z = em_zeta_ball(s, q);
    CBall th = assembly::theta_ball(ComplexDyadic(t), q);
    CBall w = exp(th.times_i()) * z;
    if (Dyadic(w.re.rad_dyadic()) <= eps.ldexp(-2)) return {assembly::round_abs(w.re.mid_dyadic(), bits), eps};
  }
  throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification, "em_Z: enclosure too wide");
}

ComplexApprox em_Z_complex(const ComplexDyadic& w, const Dyadic& eps) {
  if (eps.sign() <= 0) throw PreconditionError("em_Z needs eps > 0");
  const int64_t bits = -mpfp::mag(eps) + 4;
  double ta = std::abs(w.re.to_double()) + std::abs(w.im.to_double()) + 2;
  mpfr_prec_t q = std::max<mpfr_prec_t>(64, bits + 16 + static_cast<mpfr_prec_t>(std::log2(ta) * 2));
  ComplexDyadic s(Dyadic::pow2(-1) - w.im, w.re);
  for (; q <= kMaxPrec; q *= 2) {
    CBall z = em_zeta_ball(s, q);
    CBall th = assembly::theta_ball(w, q);
    CBall v = exp(th.times_i()) * z;
    if (v.rad_upper() <= eps.ldexp(-2))
      return {ComplexDyadic(assembly::round_abs(v.re.mid_dyadic(), bits), assembly::round_abs(v.im.mid_dyadic(), bits)),
              eps};
  }
  throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification, "em_Z: enclosure too wide");
}

}  // namespace rszeta::oracle
