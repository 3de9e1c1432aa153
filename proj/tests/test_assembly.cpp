#include <doctest.h>

#include <random>

#include "rszeta/assembly/assembly.hpp"
#include "rszeta/assembly/bounds.hpp"
#include "rszeta/assembly/theta.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/elementary.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/oracle/oracle.hpp"
#include "oracles.hpp"

using namespace rszeta;
using namespace rszeta::assembly;
using mpfp::Ball;
using mpfp::Bound;
using mpfp::Prec;
using testoracle::cdist;

namespace {

Dyadic dabs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
Dyadic cabs(const ComplexDyadic& z) { return mpfp::abs_upper(z, Prec(40)); }
Dyadic cdiff(const ComplexDyadic& a, const ComplexDyadic& b) { return cabs(mpfp::sub(a, b, Prec(4000))); }
ComplexDyadic sd(double sigma, double t) { return {Dyadic::from_double(sigma), Dyadic::from_double(t)}; }

// t/2 log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3)
Ball theta_asymptotic(const Dyadic& t, mpfr_prec_t q) {
  Ball tb = Ball::exact(t, q), pi = Ball::pi(q);
  Ball one = Ball::exact(Dyadic(1), q);
  Ball r = tb.ldexp(-1) * log(tb / pi.ldexp(1)) - tb.ldexp(-1) - pi.ldexp(-3);
  r = r + one / (Ball::exact(Dyadic(48), q) * tb);
  return r + Ball::exact(Dyadic(7), q) / (Ball::exact(Dyadic(5760), q) * tb * tb * tb);
}

}  // namespace

TEST_CASE("theta matches the asymptotic expansion") {
  for (long t : {100L, 1000L, 20000L}) {
    CAPTURE(t);
    auto th = theta(ComplexDyadic(Dyadic(t)), 80);
    Ball a = theta_asymptotic(Dyadic(t), 200);
    // next term is 31/(80640 t^5)
    Dyadic tol = Dyadic::pow2(-40);
    CHECK(dabs(mpfp::sub(th.value.re, a.mid_dyadic(), Prec(400))) < tol);
    CHECK(dabs(th.value.im) <= Dyadic::pow2(-80));
  }
}

TEST_CASE("theta vanishes at the first Gram point") {
  auto th = theta(ComplexDyadic(Dyadic::from_double(17.8455995404)), 60);
  CHECK(dabs(th.value.re) < Dyadic::pow2(-28));
}

TEST_CASE("theta is odd and conjugation symmetric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> T(20, 5000), S(-2, 2);
  for (int i = 0; i < 8; ++i) {
    ComplexDyadic z = sd(T(rng), S(rng));
    auto a = theta(z, 70), b = theta(-z, 70), c = theta(z.conj(), 70);
    CHECK(cdiff(a.value, -b.value) <= Dyadic::pow2(-69));
    CHECK(cdiff(a.value, c.value.conj()) <= Dyadic::pow2(-69));
  }
}

TEST_CASE("theta value lies inside a wider ball") {
  ComplexDyadic z = sd(777.25, 0.75);
  auto th = theta(z, 90);
  CBall b = theta_ball(z, 300);
  CHECK(cdist(th.value, b) <= Dyadic::pow2(-90));
}

TEST_CASE("S3 modulus, sign and precision") {
  for (double sigma : {0.0, 0.5, -1.0, 2.0}) {
    for (long t : {3000L, 3001L, 8000L}) {
      CAPTURE(sigma);
      CAPTURE(t);
      auto plan = params::make_plan({Dyadic::from_double(sigma), Dyadic(t), Dyadic::pow2(-30)});
      Dyadic eps8 = Dyadic::pow2(-50);
      auto S3 = compute_S3(*plan, eps8);
      // independent: (-1)^(N-1) a^-sigma exp(-i(t/2 log(t/2pi) - t/2 - pi/8)), a = sqrt(t/2pi)
      const mpfr_prec_t q = 300;
      Ball tb = Ball::exact(Dyadic(t), q), pi = Ball::pi(q);
      Ball a = sqrt(tb / pi.ldexp(1));
      Ball arg = tb.ldexp(-1) * log(tb / pi.ldexp(1)) - tb.ldexp(-1) - pi.ldexp(-3);
      Ball mod = exp(-(Ball::exact(Dyadic::from_double(sigma), q) * log(a)));
      CBall ref(mod * cos(arg), -(mod * sin(arg)));
      if (plan->geom.N % 2 == 0) ref = -ref;
      CHECK(cdist(S3.value, ref) < eps8);
      if (sigma == 0.0) CHECK(dabs(mpfp::sub(mpfp::abs_upper(S3.value, Prec(60)), Dyadic(1), Prec(80))) < eps8);
    }
  }
}

TEST_CASE("R budget entries add up below eps") {
  for (double sigma : {0.5, 0.0, 1.5}) {
    CAPTURE(sigma);
    Dyadic eps = Dyadic::pow2(-30);
    auto r = rzeta_detail(sd(sigma, 5000), eps);
    REQUIRE(r.ledger.size() == 4);
    Bound total(0);
    for (auto& e : r.ledger) total = total + Bound(e.eps);
    CHECK(total.certainly_lt(Bound(eps)));
    CHECK(r.ledger[0].eps == r.plan->eps.eps1);
    CHECK(Bound(r.ledger[1].eps).certainly_le(Bound(eps) / Bound(3)));
    CHECK(Bound(r.ledger[2].eps).certainly_le(Bound(eps) / Bound(3)));
    CHECK(r.d >= 6);
    CHECK(r.A2 > cabs(r.S2.value).ldexp(-1));
  }
}

TEST_CASE("R agrees with itself at a finer tolerance") {
  for (double t : {3000.5, 12345.0}) {
    ComplexDyadic s = sd(0.5, t);
    Dyadic eps = Dyadic::pow2(-28);
    auto a = rzeta(s, eps), b = rzeta(s, eps.ldexp(-10));
    CHECK(cdiff(a.value, b.value) < eps + eps.ldexp(-10));
  }
}

TEST_CASE("R stays under its modulus bound") {
  for (double sigma : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    CAPTURE(sigma);
    auto r = rzeta(sd(sigma, 6000), Dyadic::pow2(-20));
    CHECK(Bound(cabs(r.value)).certainly_lt(R_bound(Dyadic::from_double(sigma), Dyadic(6000))));
  }
}

TEST_CASE("pair equals the two single evaluations") {
  ComplexDyadic s = sd(0.25, 7000);
  Dyadic eps = Dyadic::pow2(-30);
  auto [a, b] = rzeta_pair(s, eps, eps);
  auto a1 = rzeta(s, eps), b1 = rzeta(sd(0.75, 7000), eps);
  CHECK(cdiff(a.value.value, a1.value) < eps.ldexp(1));
  CHECK(cdiff(b.value.value, b1.value) < eps.ldexp(1));
}

TEST_CASE("zeta against Euler-Maclaurin") {
  struct C {
    double sigma, t;
    int e;
  };
  for (C c : {C{0.5, 3000, -30}, C{0.75, 5000.25, -30}, C{0.0, 8000, -25}, C{2.0, 6000, -30}, C{-0.5, 7000, -25},
              C{0.5, 20000, -40}}) {
    CAPTURE(c.sigma);
    CAPTURE(c.t);
    ComplexDyadic s = sd(c.sigma, c.t);
    Dyadic eps = Dyadic::pow2(c.e);
    auto z = zeta_full_detail(s, eps);
    CBall ref = oracle::em_zeta_ball(s, 200);
    CHECK(cdist(z.value.value, ref) < eps);
    Bound total = Bound(z.ledger.back().eps);
    CHECK(total.certainly_lt(Bound(eps)));
  }
}

TEST_CASE("zeta conjugation is exact") {
  ComplexDyadic s = sd(0.3, 4000);
  auto a = zeta_full(s, Dyadic::pow2(-30)), b = zeta_full(s.conj(), Dyadic::pow2(-30));
  CHECK(a.value == b.value.conj());
}

TEST_CASE("Z(t) against the oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> T(2500, 12000);
  for (int i = 0; i < 5; ++i) {
    Dyadic t = Dyadic::from_double(T(rng));
    Dyadic eps = Dyadic::pow2(-30);
    auto z = z_real(t, eps);
    auto o = oracle::em_Z(t, Dyadic::pow2(-60));
    CHECK(dabs(mpfp::sub(z.value, o.value, Prec(400))) < eps + Dyadic::pow2(-60));
  }
}

TEST_CASE("Z(w) on the real axis matches Z(t)") {
  Dyadic t(4321), eps = Dyadic::pow2(-30);
  auto a = z_complex(ComplexDyadic(t), eps);
  auto b = z_real(t, eps);
  CHECK(dabs(mpfp::sub(a.value.re, b.value, Prec(400))) < eps.ldexp(1));
  CHECK(dabs(a.value.im) < eps);
}

TEST_CASE("Z(w) off the axis against exp(i theta) zeta") {
  ComplexDyadic w = sd(3500, 0.25);
  Dyadic eps = Dyadic::pow2(-25);
  auto z = z_complex(w, eps);
  ComplexDyadic s(Dyadic::pow2(-1) - w.im, w.re);
  CBall ref = exp(theta_ball(w, 200).times_i()) * oracle::em_zeta_ball(s, 200);
  CHECK(cdist(z.value, ref) < eps);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(z_real(Dyadic(40), Dyadic::pow2(-10)), PreconditionError);
  CHECK_THROWS_AS(zeta_full(sd(0.5, 45), Dyadic::pow2(-10)), PreconditionError);
  CHECK_THROWS_AS(rzeta(sd(0.5, 20), Dyadic::pow2(-10)), PreconditionError);
  CHECK(d0_of(Dyadic::pow2(-30)) == 30);
  CHECK(d0_of(Dyadic(3).ldexp(-31)) == 30);
  CHECK(Dyadic::pow2(-d0_of(Dyadic(5).ldexp(-40))) <= Dyadic(5).ldexp(-40));
}
