#include "rszeta/assembly/assembly.hpp"

#include <algorithm>

#include "rszeta/assembly/bounds.hpp"
#include "rszeta/assembly/theta.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/elementary.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/rssum/rssum.hpp"
#include "rszeta/taylorf/taylorf.hpp"
#include "rszeta/zetasum/zetasum.hpp"

namespace rszeta::assembly {

using mpfp::Bound;
using mpfp::Prec;
using Reason = PrecisionUnattainable::Reason;

namespace {

constexpr unsigned kMaxRetries = 4;

Bound babs(const ComplexDyadic& z) { return Bound(mpfp::abs_upper(z, Prec(30))); }
Bound p2(int64_t k) { return Bound(Dyadic::pow2(k)); }

void need_above(const Dyadic& t, const Bound& lo, const std::string& what) {
  if (!lo.certainly_lt(Bound(t))) throw PreconditionError(what);
}

long at_least(long lo, int64_t x) { return std::max<long>(lo, static_cast<long>(x)); }

RzetaResult finish(params::PlanPtr plan, const ComplexApprox& S1, const ComplexApprox& rs) {
  RzetaResult r;
  r.plan = plan;
  const Dyadic& eps = plan->req.eps;
  r.S1 = S1;
  // the other half of eps2 covers the truncated tail of the series
  r.S2 = {rs.value, plan->eps.eps2};
  Dyadic s2 = mpfp::abs_upper(r.S2.value, Prec(15));
  r.A2 = s2.is_zero() ? Dyadic(1) : Dyadic::pow2(mpfp::mag(s2));
  r.eps8 = (Bound(eps) / (Bound(3) * Bound(r.A2))).lower();
  r.S3 = compute_S3(*plan, r.eps8);

  Bound absS1 = Bound(mpfp::abs_upper(S1.value, Prec(15)));
  Bound absS2 = Bound(s2) * Bound(mpfp::abs_upper(r.S3.value, Prec(15)));
  Bound x = Bound(6) * (Bound(3) * absS1 + Bound(7) * absS2);
  r.d = static_cast<unsigned long>(std::max<int64_t>(6, d0_of(eps) + x.mag_upper()));
  Prec d(r.d);
  ComplexDyadic s1 = mpfp::round_even(S1.value, d);
  ComplexDyadic s2v = mpfp::round_even(r.S2.value, d);
  ComplexDyadic s3 = mpfp::round_even(r.S3.value, d);
  r.value = {mpfp::add(s1, mpfp::mul(s3, s2v, d), d), eps};

  r.ledger.push_back({"S1 main sum", plan->eps.eps1});
  r.ledger.push_back({"S2 correction x a^-sigma", (Bound(plan->eps.eps2) / plan->geom.a_sigma).upper()});
  r.ledger.push_back({"S3 phase x A2", r.eps8 * r.A2});
  r.ledger.push_back({"final rounding", (p2(-static_cast<int64_t>(r.d)) * (Bound(3) * absS1 + Bound(7) * absS2)).upper()});
  return r;
}

}  // namespace

int64_t d0_of(const Dyadic& eps) { return 1 - mpfp::mag(eps); }

ComplexApprox compute_S3(const params::RSPlan& plan, const Dyadic& eps8) {
  const Dyadic& t = plan.req.t;
  need_above(t, Bound(8) * Bound::pi(), "S3 needs t > 8 pi");
  if (!(Bound(2) * abs(Bound(plan.req.sigma))).certainly_le(plan.geom.a))
    throw PreconditionError("S3 needs |sigma| <= a/2");
  Prec P(params::s3_precision(t, plan.geom.a_sigma, eps8));
  Dyadic pi = mpfp::pi(P);
  Dyadic tpi = mpfp::div(t, pi.ldexp(1), P);
  Dyadic half_t = t.ldexp(-1);
  Dyadic arg = mpfp::mul(half_t, mpfp::log(tpi, P), P);
  arg = mpfp::sub(arg, half_t, P);
  arg = mpfp::sub(arg, pi.ldexp(-3), P);
  ComplexDyadic U = mpfp::exp(ComplexDyadic(Dyadic(0), -arg), P);
  Dyadic a = mpfp::trunc_a(t, P);
  Dyadic asigma = mpfp::pow(a, -plan.req.sigma, P);
  ComplexDyadic S3 = mpfp::mul(asigma, U, P);
  if (plan.geom.N % 2 == 0) S3 = -S3;
  return {S3, eps8};
}

RzetaResult rzeta_detail(const ComplexDyadic& s, const Dyadic& eps) {
  need_above(s.im, Bound(8) * Bound::pi(), "R(s) needs t > 8 pi");
  auto plan = params::make_plan({s.re, s.im, eps});
  ComplexApprox S1 = zetasum::zetasum(s, plan->geom.N, plan->eps.eps1);
  auto ws = rssum::rs_correction(*plan);
  return finish(plan, S1, ws.rssum);
}

ComplexApprox rzeta(const ComplexDyadic& s, const Dyadic& eps) { return rzeta_detail(s, eps).value; }

std::pair<RzetaResult, RzetaResult> rzeta_pair(const ComplexDyadic& s, const Dyadic& eps1, const Dyadic& eps2) {
  need_above(s.im, Bound(8) * Bound::pi(), "R(s) needs t > 8 pi");
  ComplexDyadic s2(Dyadic(1) - s.re, s.im);
  auto pa = params::make_plan({s.re, s.im, eps1});
  auto pb = params::make_plan({s2.re, s2.im, eps2});
  if (pa->geom.N != pb->geom.N) throw PreconditionError("rzeta_pair: main sums of different length");
  auto [S1a, S1b] = zetasum::zetasum_pair(s, pa->eps.eps1, s2, pb->eps.eps1, pa->geom.N);
  const params::RSPlan* both[] = {pa.get(), pb.get()};
  auto Fp = taylorf::compute_Fp_shared(both);
  auto wa = rssum::rs_correction(*pa, Fp[0]);
  auto wb = rssum::rs_correction(*pb, Fp[1]);
  return {finish(pa, S1a, wa.rssum), finish(pb, S1b, wb.rssum)};
}

Evaluation z_real_detail(const Dyadic& t, const Dyadic& eps) {
  need_above(t, Bound(16) * Bound::pi(), "Z(t) needs t > 16 pi");
  if (eps.sign() <= 0 || !(eps < Dyadic(1))) throw PreconditionError("Z(t) needs 0 < eps < 1");
  const int64_t w0 = d0_of(eps);
  Bound X = Bound(t) / (Bound(2) * Bound::pi());
  Bound lx = log(X);
  Evaluation ev;
  ev.wptheta = static_cast<unsigned long>(at_least(6, w0 + 1 + (Bound(3) * pow(X, Bound::rational(3, 2)) * lx).mag_upper()));
  ev.wpR = static_cast<unsigned long>(at_least(6, w0 + 1 + (Bound(12) * X * lx).mag_upper()));
  for (;;) {
    ThetaValue th = theta(ComplexDyadic(t), ev.wptheta);
    RzetaResult R = rzeta_detail(ComplexDyadic(Dyadic::pow2(-1), t), Dyadic::pow2(-static_cast<int64_t>(ev.wpR)));
    Prec P(ev.wpR);
    ComplexDyadic E = mpfp::exp(ComplexDyadic(Dyadic(0), th.value.re), P);
    ComplexDyadic z = mpfp::mul(E, R.value.value, P);
    Bound dd = p2(-static_cast<int64_t>(ev.wpR)), da = p2(-static_cast<int64_t>(ev.wptheta));
    Bound absR = babs(R.value.value);
    Bound err = Bound(2) * (dd * babs(E) * absR + (dd + da) * absR + Bound(R.value.eps));
    if (err.certainly_lt(Bound(eps))) {
      ev.value = {ComplexDyadic(z.re.ldexp(1)), eps};
      ev.plans.push_back(R.plan);
      ev.ledger = R.ledger;
      for (auto& e : ev.ledger) e.stage = "R: " + e.stage;
      ev.ledger.push_back({"Z total (runtime bound)", err.upper()});
      return ev;
    }
    if (++ev.retries > kMaxRetries) throw PrecisionUnattainable(Reason::Certification, "Z(t): error check keeps failing");
    auto bump = static_cast<unsigned long>(std::max<int64_t>(1, (err / Bound(eps)).mag_upper() + 1));
    ev.wptheta += bump;
    ev.wpR += bump;
  }
}

RealApprox z_real(const Dyadic& t, const Dyadic& eps) {
  auto ev = z_real_detail(t, eps);
  return {ev.value.value.re, ev.value.eps};
}

Evaluation zeta_full_detail(const ComplexDyadic& s, const Dyadic& eps) {
  if (s.im.sign() < 0) {
    Evaluation ev = zeta_full_detail(s.conj(), eps);
    ev.value.value = ev.value.value.conj();
    return ev;
  }
  need_above(s.im, Bound(16) * Bound::pi(), "zeta(s) through R needs |t| > 16 pi");
  if (eps.sign() <= 0 || !(eps < Dyadic(1))) throw PreconditionError("zeta(s) needs 0 < eps < 1");
  const Dyadic& sigma = s.re;
  const Dyadic& t = s.im;
  ZetaBounds B = zeta_bounds(sigma, t);
  const int64_t me = mpfp::mag(eps);
  Evaluation ev;
  Bound big = Bound::rational(212, 100) * B.M1 + Bound::rational(212, 10) * B.M2 * B.X +
              Bound::rational(13, 10) * B.M2 * B.X * B.T;
  ev.wpbasic = static_cast<unsigned long>(
      std::max<int64_t>({6, 3 + B.T.mag_upper(), 2 + big.mag_upper() - me + 1}));
  ev.wptheta = static_cast<unsigned long>(
      std::max<int64_t>(4, 3 + (Bound::rational(27, 10) * B.M2 * B.X).mag_upper() - me + 1));
  ev.wpR = static_cast<unsigned long>(
      std::max<int64_t>(6, 3 + (Bound::rational(11, 10) + Bound(2) * B.X).mag_upper() - me + 1));
  for (;;) {
    ThetaValue th = theta(ComplexDyadic(t, Dyadic::pow2(-1) - sigma), ev.wptheta);
    Dyadic er = Dyadic::pow2(-static_cast<int64_t>(ev.wpR));
    auto [RA, RB] = rzeta_pair(s, er, er);
    ComplexDyadic r2 = RB.value.value.conj();
    Prec P(ev.wpbasic);
    ComplexDyadic e = mpfp::exp(ComplexDyadic(th.value.im.ldexp(1), -th.value.re.ldexp(1)), P);
    ComplexDyadic prod = mpfp::mul(e, r2, P);
    ComplexDyadic zv = mpfp::add(RA.value.value, prod, P);

    Bound dd = p2(-static_cast<int64_t>(ev.wpbasic)), alpha = p2(-static_cast<int64_t>(ev.wptheta));
    Bound one_minus = Bound(1) - dd;
    Bound ae = babs(e), ar2 = babs(r2);
    Bound beta(RA.value.eps), gamma(RB.value.eps);
    Bound e_unr = ae / one_minus;                       // |exp(-2i theta~)|
    Bound chi = e_unr * exp(Bound(2) * alpha);          // |chi|
    Bound de = dd * e_unr + chi * Bound(2) * alpha * exp(Bound(2) * alpha);
    Bound err = beta + dd * ae * ar2 + ae * gamma + de * (ar2 + gamma) + dd * babs(zv) / one_minus;
    if (err.certainly_lt(Bound(eps))) {
      ev.value = {zv, eps};
      ev.plans = {RA.plan, RB.plan};
      for (auto& x : RA.ledger) ev.ledger.push_back({"R(s): " + x.stage, x.eps});
      for (auto& x : RB.ledger) ev.ledger.push_back({"R(1-sigma+it): " + x.stage, x.eps});
      ev.ledger.push_back({"zeta total (runtime bound)", err.upper()});
      return ev;
    }
    if (++ev.retries > kMaxRetries) throw PrecisionUnattainable(Reason::Certification, "zeta: error check keeps failing");
    auto bump = static_cast<unsigned long>(std::max<int64_t>(1, (err / Bound(eps)).mag_upper() + 1));
    ev.wptheta += bump;
    ev.wpR += bump;
    ev.wpbasic += bump;
  }
}

ComplexApprox zeta_full(const ComplexDyadic& s, const Dyadic& eps) { return zeta_full_detail(s, eps).value; }

Evaluation z_complex_detail(const ComplexDyadic& w, const Dyadic& eps) {
  const Dyadic& t = w.re;
  need_above(t, Bound(16) * Bound::pi(), "Z(w) needs Re w > 16 pi");
  if (eps.sign() <= 0 || !(eps < Dyadic(1))) throw PreconditionError("Z(w) needs 0 < eps < 1");
  const Dyadic sigma = Dyadic::pow2(-1) - w.im;
  ComplexDyadic s(sigma, t);
  ZetaBounds B = zeta_bounds(sigma, t);
  Bound xh = sqrt(B.X), msum = B.M1 + B.M2;
  const int64_t me = mpfp::mag(eps);
  Evaluation ev;
  ev.wpbasic = static_cast<unsigned long>(std::max<int64_t>(
      {6, 3 + B.T.mag_upper(), (xh * msum * (Bound(26) + Bound(2) * B.T)).mag_upper() - me + 3}));
  ev.wptheta = static_cast<unsigned long>(
      std::max<int64_t>(4, (Bound::rational(204, 100) * xh * msum).mag_upper() - me + 3));
  ev.wpR = static_cast<unsigned long>(std::max<int64_t>(6, (Bound(4) * xh).mag_upper() - me + 3));
  for (;;) {
    ThetaValue th = theta(w, ev.wptheta);
    Dyadic er = Dyadic::pow2(-static_cast<int64_t>(ev.wpR));
    auto [RA, RB] = rzeta_pair(s, er, er);
    ComplexDyadic r1 = RA.value.value, r2 = RB.value.value.conj();
    Prec P(ev.wpbasic);
    ComplexDyadic e1 = mpfp::exp(th.value.times_i(), P);
    ComplexDyadic e2 = mpfp::exp(-th.value.times_i(), P);
    ComplexDyadic p1 = mpfp::mul(e1, r1, P), q2 = mpfp::mul(e2, r2, P);
    ComplexDyadic zv = mpfp::add(p1, q2, P);

    Bound dd = p2(-static_cast<int64_t>(ev.wpbasic)), alpha = p2(-static_cast<int64_t>(ev.wptheta));
    Bound one_minus = Bound(1) - dd;
    auto part = [&](const ComplexDyadic& e, const ComplexDyadic& r, const Bound& b) {
      Bound ae = babs(e), ar = babs(r);
      Bound eu = ae / one_minus;
      Bound de = dd * eu + eu * alpha * exp(alpha);
      return ae * b + de * (ar + b) + dd * ae * ar;
    };
    Bound err = part(e1, r1, Bound(RA.value.eps)) + part(e2, r2, Bound(RB.value.eps)) + dd * babs(zv) / one_minus;
    if (err.certainly_lt(Bound(eps))) {
      ev.value = {zv, eps};
      ev.plans = {RA.plan, RB.plan};
      for (auto& x : RA.ledger) ev.ledger.push_back({"R(s): " + x.stage, x.eps});
      for (auto& x : RB.ledger) ev.ledger.push_back({"R(1-sigma+it): " + x.stage, x.eps});
      ev.ledger.push_back({"Z(w) total (runtime bound)", err.upper()});
      return ev;
    }
    if (++ev.retries > kMaxRetries) throw PrecisionUnattainable(Reason::Certification, "Z(w): error check keeps failing");
    auto bump = static_cast<unsigned long>(std::max<int64_t>(1, (err / Bound(eps)).mag_upper() + 1));
    ev.wptheta += bump;
    ev.wpR += bump;
    ev.wpbasic += bump;
  }
}

ComplexApprox z_complex(const ComplexDyadic& w, const Dyadic& eps) { return z_complex_detail(w, eps).value; }

}  // namespace rszeta::assembly
