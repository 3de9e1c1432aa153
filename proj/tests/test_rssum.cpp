#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rszeta/mpfp/elementary.hpp"
#include "rszeta/mpfp/eta.hpp"
#include "rszeta/rssum/rssum.hpp"
#include "rszeta/taylorf/taylorf.hpp"

using namespace rszeta;
using namespace rszeta::rssum;
using mpfp::Ball;
using mpfp::CBall;
using mpfp::Prec;
using testoracle::cdist;

namespace {

params::PlanPtr plan_for(double sigma, double t, int bits) {
  return params::make_plan({Dyadic::from_double(sigma), Dyadic::from_double(t), Dyadic::pow2(-bits)});
}

// true t^(k)_l / a^k, from exact d, the series of F at the true p, and balls
struct Reference {
  mpfr_prec_t q;
  Ball a, p;
  std::vector<std::vector<mpq_class>> d;
  std::vector<CBall> F;  // F^(m)(p), m <= 3L-3

  explicit Reference(const params::RSPlan& plan) {
    q = static_cast<mpfr_prec_t>(4 * std::max(plan.wp.wpfp, plan.wp.wptcoef[0]) + 64);
    Ball pi = Ball::pi(q);
    a = sqrt(Ball::exact(plan.req.t, q) / pi.ldexp(1));
    p = Ball::exact(Dyadic(1), q) - (a - Ball::exact(Dyadic(plan.geom.N), q)).ldexp(1);
    const unsigned L = plan.counts.L;
    d = testoracle::exact_d(plan.req.sigma.to_mpq(), L);
    auto E = taylorf::euler_numbers(2 * (plan.counts.J + 60));
    std::vector<CBall> c;
    for (unsigned n = 0; n < plan.counts.J + 60; ++n) c.push_back(testoracle::brute_c2n(n, q, E));
    for (unsigned m = 0; m + 2 <= 3 * L; ++m) F.push_back(testoracle::series_F(m, p, c));
  }

  CBall tv(unsigned k, unsigned l) const {
    Ball pi = Ball::pi(q);
    mpq_class dq = d[k][l];
    Ball db = Ball::exact(Dyadic(mpz_class(dq.get_num())), q) / Ball::exact(Dyadic(mpz_class(dq.get_den())), q);
    Ball s = db;
    for (unsigned i = 0; i < 2 * k - l; ++i) s = s / pi;
    for (unsigned i = 0; i < k; ++i) s = s / a;
    CBall z = s.ldexp(-static_cast<long>(l)) * F[3 * k - 2 * l];
    for (unsigned i = 0; i < (4 - l % 4) % 4; ++i) z = z.times_i();  // (-i)^l
    return z;
  }
  CBall term(unsigned k) const {
    CBall s(Ball::exact(Dyadic(0), q), Ball::exact(Dyadic(0), q));
    for (unsigned l = 0; l <= 3 * k / 2; ++l) s = s + tv(k, l);
    return s;
  }
};

}  // namespace

TEST_CASE("inverse powers of a") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(2000, 60000);
  for (int i = 0; i < 6; ++i) {
    auto plan = plan_for(0.5, std::round(ut(rng)), 40);
    auto av = compute_inverse_powers(*plan);
    REQUIRE(av.size() == plan->counts.L);
    CHECK(av[0] == Dyadic(1));
    const unsigned long d = plan->wp.wptv[0];
    Ball a = sqrt(Ball::exact(plan->req.t, 4 * d) / Ball::pi(4 * d).ldexp(1));
    Ball ak = Ball::exact(Dyadic(1), 4 * d);
    for (unsigned k = 1; k < av.size(); ++k) {
      ak = ak * a;
      Ball dev = Ball::exact(av[k], 4 * d) * ak - Ball::exact(Dyadic(1), 4 * d);
      CHECK(dev.abs_upper() <= mpfp::eta_bound(2 * k, d));
    }
  }
  // t = 8 pi gives a = 2
  params::RSPlan fake = *plan_for(0.5, 3000, 30);
  fake.req.t = mpfp::mul(mpfp::pi(Prec(300)), Dyadic(8), Prec(300));
  auto av = compute_inverse_powers(fake);
  CHECK(std::abs(av[1].to_double() - 0.5) < 1e-8);
}

TEST_CASE("powers of pi") {
  auto plan = plan_for(0.5, 10000, 53);
  auto pw = compute_pipowers(*plan);
  CHECK(pw.size() == 2 * plan->counts.L - 1);
  CHECK(pw[0] == Dyadic(1));
  const unsigned long d = plan->wp.wppi;
  Ball pi = Ball::pi(4 * d), pr = Ball::exact(Dyadic(1), 4 * d);
  for (unsigned r = 1; r < pw.size(); ++r) {
    pr = pr * pi;
    Ball dev = Ball::exact(pw[r], 4 * d) / pr - Ball::exact(Dyadic(1), 4 * d);
    CHECK(dev.abs_upper() <= mpfp::eta_bound(2 * r, d));
  }
  CHECK(plan->wp.wppi > plan->wp.wptcoef[0]);
}

TEST_CASE("tv, term and rssum against an independent recompute") {
  struct Case { double sigma, t; int bits; };
  for (Case c : {Case{0.5, 3000, 40}, Case{0.5, 10000, 53}, Case{0.0, 8000, 40}, Case{2.0, 20000, 50},
                 Case{-1.0, 20000, 40}}) {
    CAPTURE(c.sigma);
    CAPTURE(c.t);
    auto plan = plan_for(c.sigma, c.t, c.bits);
    auto ws = rs_correction(*plan);
    Reference ref(*plan);
    const unsigned L = plan->counts.L;
    // k = 0: every multiplier is an exact one
    auto Fp = taylorf::compute_Fp(*plan);
    CHECK(ws.tv[0][0] == mpfp::round_even(Fp[0].value, Prec(plan->wp.wptcoef[0])));
    for (unsigned k = 0; k < L; ++k) {
      for (unsigned l = 0; l <= 3 * k / 2; ++l) CHECK(cdist(ws.tv[k][l], ref.tv(k, l)) <= plan->eps.eps4);
      CHECK(cdist(ws.term[k].value, ref.term(k)) <= plan->eps.eps3);
      if (k >= 1) CHECK(mpfp::abs_upper(ws.term[k].value, Prec(30)) <= rsbound(*plan) + plan->eps.eps3);
    }
    CBall total(Ball::exact(Dyadic(0), ref.q), Ball::exact(Dyadic(0), ref.q));
    for (unsigned k = 0; k < L; ++k) total = total + ref.term(k);
    CHECK(cdist(ws.rssum.value, total) <= plan->eps.eps2.ldexp(-1));
    CHECK(ws.rssum.eps == plan->eps.eps2.ldexp(-1));
  }
}

TEST_CASE("term bounds T_k") {
  auto plan = plan_for(0.5, 10000, 53);
  auto ws = rs_correction(*plan);
  const auto& c = plan->consts;
  for (unsigned k = 1; k < plan->counts.L; ++k) {
    // |C_k(p)/a^k| <= c Gamma(k/2) / (b a)^k
    mpfp::Bound g = gamma(mpfp::Bound::rational(k, 2));
    mpfp::Bound b = mpfp::Bound(c.c) * g / pow(mpfp::Bound(c.b) * plan->geom.a, static_cast<long>(k));
    CHECK(mpfp::abs_upper(ws.term[k].value, Prec(30)) <= (b + mpfp::Bound(plan->eps.eps3)).upper());
  }
}

TEST_CASE("precision ladder is non-increasing") {
  for (double t : {3000.0, 10000.0, 50000.0})
    for (int bits : {30, 53}) {
      auto plan = plan_for(0.5, t, bits);
      for (unsigned k = 1; k < plan->counts.L; ++k) {
        CHECK(plan->wp.wpterm[k] <= plan->wp.wpterm[k - 1]);
        CHECK(plan->wp.wptcoef[k] <= plan->wp.wptcoef[k - 1]);
      }
    }
}

TEST_CASE("inner summation order does not matter within budget") {
  auto plan = plan_for(0.5, 10000, 53);
  auto a = rs_correction(*plan, InnerOrder::Ascending);
  auto b = rs_correction(*plan, InnerOrder::Descending);
  for (unsigned k = 0; k < plan->counts.L; ++k) {
    auto diff = mpfp::abs_upper(a.term[k].value - b.term[k].value, Prec(30));
    CHECK(diff <= plan->eps.eps3.ldexp(1));
  }
}

TEST_CASE("tail consistency: two more terms at a quarter budget agree") {
  for (double t : {5000.0, 20000.0}) {
    auto p1 = plan_for(0.5, t, 40);
    params::RSPlan p2 = *p1;
    p2.req.eps = p1->req.eps.ldexp(-2);
    p2.counts.L = p1->counts.L + 2;
    p2.counts.K = 3 * p2.counts.L + 4;
    p2.eps = params::build_cascade(p2.geom, p2.consts, p2.req.eps, p2.counts.L);
    params::choose_M_and_J(p2.geom, p2.consts, p2.counts, p2.eps);
    p2.wp = params::build_precision_plan(p2.geom, p2.consts, p2.counts, p2.eps);
    if (p2.wp.wpp > p2.geom.p_bits) p2.geom = params::derive_geometry(p2.req, p2.wp.wpp);
    auto r1 = rs_correction(*p1).rssum.value;
    auto r2 = rs_correction(p2).rssum.value;
    CHECK(mpfp::abs_upper(r1 - r2, Prec(30)) <= p1->eps.eps2);
  }
}

TEST_CASE("outer sum of one term") {
  params::RSPlan plan = *plan_for(0.5, 3000, 30);
  plan.counts.L = 1;
  std::vector<mpfp::ComplexApprox> one = {{mpfp::ComplexDyadic(Dyadic(3), Dyadic(1)), plan.eps.eps3}};
  auto r = compute_rssum(one, plan);
  CHECK(r.value == one[0].value);
}
