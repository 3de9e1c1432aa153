#include "rszeta/assembly/theta.hpp"

#include <algorithm>
#include <cmath>

#include "rszeta/mpfp/bernoulli.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/errors.hpp"

namespace rszeta::assembly {

using mpfp::Ball;
using mpfp::Bound;
using mpfp::Prec;

namespace {

constexpr mpfr_prec_t kMaxPrec = mpfr_prec_t(1) << 20;

Ball zero(mpfr_prec_t q) { return Ball::exact(Dyadic(0), q); }

Ball rational(const mpq_class& x, mpfr_prec_t q) {
  return Ball::exact(Dyadic(mpz_class(x.get_num())), q) / Ball::exact(Dyadic(mpz_class(x.get_den())), q);
}

Dyadic bernoulli_abs_upper(const mpq_class& b) {
  mpz_class n = abs(b.get_num());
  return mpfp::div_dir(Dyadic(n), Dyadic(mpz_class(b.get_den())), Prec(30), mpfp::Dir::Up);
}

// Stirling series on Re w >= 0, |w| >= 8
CBall stirling(const CBall& w) {
  const mpfr_prec_t q = w.prec();
  Ball pi = Ball::pi(q);
  CBall lw = log(w);
  CBall half(Ball::exact(Dyadic::pow2(-1), q), zero(q));
  CBall s = (w - half) * lw - w;
  s.re = s.re + log(pi.ldexp(1)).ldexp(-1);
  // terms B_2k / (2k(2k-1) w^(2k-1)); remainder bounded by the first omitted
  // term times sec(arg w/2)^(2K+2) <= 2^(K+1)
  Dyadic wlow = mpfp::sqrt(w.norm().lower(), Prec(30));
  wlow = mpfp::mul_dir(wlow, Dyadic(1) - Dyadic::pow2(-20), Prec(30), mpfp::Dir::Down);
  const auto target = Bound(Dyadic::pow2(-static_cast<int64_t>(q) - 4));
  CBall inv = CBall(Ball::exact(Dyadic(1), q), zero(q)) / w;
  CBall inv2 = inv * inv;
  CBall pw = inv;
  unsigned count = 64;
  auto B = mpfp::bernoulli_even(count);
  Bound prev_rem;
  bool have_prev = false;
  for (unsigned k = 1;; ++k) {
    if (k + 1 >= count) {
      count *= 2;
      B = mpfp::bernoulli_even(count);
    }
    const mpq_class& b = (*B)[k];
    Ball coef = rational(b, q) / Ball::exact(Dyadic(static_cast<long>(2 * k * (2 * k - 1))), q);
    s = s + coef * pw;
    pw = pw * inv2;
    // remainder after k terms
    Bound rem = Bound(bernoulli_abs_upper((*B)[k + 1])) /
                (Bound(static_cast<long>((2 * k + 2) * (2 * k + 1))) * pow(Bound(wlow), static_cast<long>(2 * k + 1))) *
                Bound(Dyadic::pow2(k + 1));
    if (rem.certainly_lt(target) || (have_prev && prev_rem.certainly_lt(rem))) {
      Dyadic e = rem.upper();
      return {s.re.add_error(e), s.im.add_error(e)};
    }
    prev_rem = rem;
    have_prev = true;
  }
}

}  // namespace

CBall loggamma(const CBall& w) {
  const mpfr_prec_t q = w.prec();
  if (w.im.contains_zero() && w.re.lower().sign() <= 0)
    throw DomainError("loggamma: argument on or near the non-positive real axis");
  if (w.im.upper().sign() < 0) return loggamma(w.conj()).conj();
  // shift right until Re >= 0 and |w| >= r0
  const double r0 = std::max(8.0, static_cast<double>(q) / 4.0 + 8.0);
  const double re = w.re.mid_dyadic().to_double(), im = std::abs(w.im.mid_dyadic().to_double());
  long K = 0;
  if (re < 0) K = static_cast<long>(std::ceil(-re)) + 1;
  while (std::hypot(re + static_cast<double>(K), im) < r0) ++K;
  CBall ws = w;
  CBall corr(zero(q), zero(q));
  for (long j = 0; j < K; ++j) {
    corr = corr + log(ws);
    ws.re = ws.re + Ball::exact(Dyadic(1), q);
  }
  return stirling(ws) - corr;
}

CBall theta_ball(const ComplexDyadic& z, mpfr_prec_t q) {
  Ball logpi = log(Ball::pi(q));
  CBall zb = CBall::exact(z, q);
  // 1/4 + iz/2
  CBall w1(Ball::exact(Dyadic::pow2(-2) - z.im.ldexp(-1), q), Ball::exact(z.re.ldexp(-1), q));
  if (z.im.is_zero()) {
    CBall g = loggamma(w1);
    return {g.im - logpi * Ball::exact(z.re.ldexp(-1), q), zero(q)};
  }
  CBall w2(Ball::exact(Dyadic::pow2(-2) + z.im.ldexp(-1), q), Ball::exact(-z.re.ldexp(-1), q));
  CBall diff = loggamma(w1) - loggamma(w2);
  // -i diff / 2 = (diff.im, -diff.re)/2
  CBall r(diff.im.ldexp(-1), (-diff.re).ldexp(-1));
  return r - logpi * zb.ldexp(-1);
}

Dyadic round_abs(const Dyadic& x, int64_t frac_bits) {
  if (x.is_zero()) return x;
  int64_t p = mpfp::mag(x) + frac_bits;
  if (p < 1) {
    // |x| < 2^-(frac_bits-1): nearest multiple is 0 or +-2^-frac_bits
    Dyadic g = Dyadic::pow2(-frac_bits);
    Dyadic half = g.ldexp(-1);
    if (x.abs() <= half) return Dyadic(0);
    return x.sign() < 0 ? -g : g;
  }
  return mpfp::round_even(x, Prec(static_cast<unsigned long>(p)));
}

ThetaValue theta(const ComplexDyadic& z, unsigned long d) {
  double mz = std::max(4.0, std::hypot(z.re.to_double(), z.im.to_double()));
  auto extra = static_cast<mpfr_prec_t>(std::log2(mz * std::log(mz)) + 40);
  const Dyadic tol = Dyadic::pow2(-static_cast<int64_t>(d) - 2);
  for (mpfr_prec_t q = static_cast<mpfr_prec_t>(d) + extra; q <= kMaxPrec; q *= 2) {
    CBall b = theta_ball(z, q);
    if (!(tol < b.re.rad_dyadic()) && !(tol < b.im.rad_dyadic())) {
      // each component within 2^-(d+2) + 2^-(d+3), so the modulus is below 2^-d
      const int64_t fb = static_cast<int64_t>(d) + 2;
      return {ComplexDyadic(round_abs(b.re.mid_dyadic(), fb), round_abs(b.im.mid_dyadic(), fb)), z, d};
    }
  }
  throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification, "theta: widening cap reached");
}

}  // namespace rszeta::assembly
