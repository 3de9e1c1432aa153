#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rszeta/mpfp/ball.hpp"
#include "rszeta/taylorf/cache.hpp"
#include "rszeta/taylorf/taylorf.hpp"
#include "oracles.hpp"

using namespace rszeta;
using namespace rszeta::taylorf;
using mpfp::Ball;
using mpfp::CBall;
using mpfp::Prec;

using testoracle::absq;
using testoracle::brute_c2n;
using testoracle::cdist;
using testoracle::closed_F;

TEST_CASE("Euler numbers") {
  auto E = euler_numbers(20);
  REQUIRE(E.size() == 11);
  CHECK(E[0] == 1);
  CHECK(E[1] == -1);
  CHECK(E[2] == 5);
  CHECK(E[3] == -61);
  CHECK(E[4] == 1385);
  CHECK(E[10] == mpz_class("370371188237525"));
  auto big = euler_numbers(200);
  for (unsigned n = 0; n < big.size(); ++n) CHECK(((n % 2 == 0) ? big[n] > 0 : big[n] < 0));
}

TEST_CASE("v and w tables") {
  const unsigned J = 20;
  Dyadic eps6 = Dyadic::pow2(-60);
  VWTables t = compute_vw(J, eps6);
  CHECK(t.wpvw == vw_precision(J, eps6));
  CHECK(t.wpvw >= 4 * J + 4 + 60);
  REQUIRE(t.v.size() == J);
  REQUIRE(t.w.size() == 2 * J - 1);
  CHECK(t.v[0].value == Dyadic(1));
  CHECK(t.w[0].value == Dyadic(1));
  // W_2 = (pi/2)^2/2 at 200 bits
  Ball pi = Ball::pi(300);
  Ball w2 = (pi * pi).ldexp(-3);
  CHECK(cdist(ComplexDyadic(t.w[2].value), CBall(w2, Ball::exact(Dyadic(0), 300))) < t.w[2].eps);
  auto A = params::euler_term_bounds(J);
  auto B = params::p2_w_bounds(2 * J);
  for (unsigned k = 0; k < J; ++k) {
    CHECK(t.v[k].value.abs() <= A[k] + t.v[k].eps);
    CHECK(t.v[k].eps <= A[k].ldexp(-static_cast<int64_t>(t.wpvw)));
    CHECK(t.v[k].value.sign() == 1);  // (-1)^k E_2k > 0
  }
  for (unsigned k = 0; k < t.w.size(); ++k) CHECK(t.w[k].eps <= B[k].ldexp(-static_cast<int64_t>(t.wpvw)));
}

TEST_CASE("P1 and P2") {
  const unsigned J = 24;
  Dyadic eps6 = Dyadic::pow2(-50);
  VWTables t = compute_vw(J, eps6);
  PPair p0 = compute_P1_P2(0, t, eps6);
  CHECK(p0.P1.value == ComplexDyadic(Dyadic(0), Dyadic(-1)));
  CHECK(p0.P2.value == ComplexDyadic(Dyadic(1)));
  for (unsigned n = 0; n < J; ++n) {
    PPair pp = compute_P1_P2(n, t, eps6);
    double s = std::ldexp(1.0, 2 * static_cast<int>(n));
    CHECK(mpfp::abs_upper(pp.P1.value, Prec(30)).to_double() < 1.69 * s);
    CHECK(mpfp::abs_upper(pp.P2.value, Prec(30)).to_double() < 1.89 * s);
    CHECK(pp.P1.value.re.is_zero());
    CHECK(pp.wpp1 <= t.wpvw);
    CHECK(pp.wpp2 <= t.wpvw);
  }
}

TEST_CASE("c2n against a 4x precision evaluation of the defining sum") {
  const unsigned J = 30;
  Dyadic eps6 = Dyadic::pow2(-80);
  TaylorCoefficients tc = compute_c2n(J, eps6);
  REQUIRE(tc.c2n.size() == J);
  auto E = euler_numbers(2 * J);
  const mpfr_prec_t q = 4 * (4 * J + tc.wpc0);
  // c0 ~ 0.19134 - 0.24517 i
  CHECK(tc.c2n[0].re.to_double() == doctest::Approx(0.19134).epsilon(1e-4));
  CHECK(tc.c2n[0].im.to_double() == doctest::Approx(-0.24517).epsilon(1e-4));
  Ball pi = Ball::pi(200);
  for (unsigned n = 0; n < J; ++n) {
    CAPTURE(n);
    CBall ref = brute_c2n(n, q, E);
    CHECK(cdist(tc.c2n[n], ref) < tc.delta(n));
    // |c_2n| <= pi^n/(2^(n+1) n!)
    double bound = std::pow(M_PI, n) / (std::ldexp(1.0, static_cast<int>(n) + 1) * std::tgamma(n + 1.0));
    CHECK(mpfp::abs_upper(tc.c2n[n], Prec(30)).to_double() <= bound + tc.delta(n).to_double());
  }
  // c_2n R^2n -> 0 at R = 4, on the true values
  auto E2 = euler_numbers(340);
  auto scaled = [&](unsigned n) {
    return brute_c2n(n, 1200, E2).abs_upper().ldexp(4 * static_cast<int64_t>(n)).to_double();
  };
  CHECK(scaled(160) < scaled(120));
  CHECK(scaled(120) < scaled(80));
  CHECK(scaled(160) < 1e-3);
}

TEST_CASE("tail and H bounds for a chosen J") {
  auto plan = params::make_plan({Dyadic::pow2(-1), Dyadic(10000), Dyadic::pow2(-53)});
  const unsigned J = plan->counts.J;
  TaylorCoefficients big = compute_c2n(J + 40, plan->eps.eps6);
  double tail = 0;
  for (unsigned j = J; j < big.J; ++j)
    tail += std::ldexp(mpfp::abs_upper(big.c2n[j], Prec(30)).to_double(), 2 * static_cast<int>(j));
  CHECK(tail <= std::pow(2 * M_PI, J) / std::tgamma(J + 1.0));
  // H_m over the full even-coefficient list
  auto poly = big.polynomial();
  for (unsigned m = 0; m < poly.size(); ++m) {
    // computed values differ from the true ones by at most the tolerances
    double H = 0, slack = 0;
    for (unsigned k = m; k < poly.size(); ++k) {
      H += std::ldexp(mpfp::abs_upper(poly[k].value, Prec(30)).to_double(), static_cast<int>(k));
      slack += std::ldexp(poly[k].eps.to_double(), static_cast<int>(k));
    }
    CHECK(H <= 267.746 + slack);
    if (m >= 21) CHECK(H <= std::pow(2 * M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1) + 2 * slack);
  }
}

TEST_CASE("poly_derivatives trivial cases") {
  std::vector<ComplexApprox> c0 = {{ComplexDyadic(Dyadic(3), Dyadic(-1)), Dyadic::pow2(-40)}};
  std::vector<Dyadic> eps = {Dyadic::pow2(-30)};
  auto r = poly_derivatives(c0, Dyadic::pow2(-1), 1, eps, 40);
  CHECK(r[0].value == ComplexDyadic(Dyadic(3), Dyadic(-1)));
  // x^2 at p = 1
  std::vector<ComplexApprox> sq = {{ComplexDyadic(), Dyadic(0)}, {ComplexDyadic(), Dyadic(0)},
                                   {ComplexDyadic(Dyadic(1)), Dyadic(0)}};
  std::vector<Dyadic> e3(3, Dyadic::pow2(-20));
  auto d = poly_derivatives(sq, Dyadic(1), 3, e3, 40);
  CHECK(d[0].value == ComplexDyadic(Dyadic(1)));
  CHECK(d[1].value == ComplexDyadic(Dyadic(2)));
  CHECK(d[2].value == ComplexDyadic(Dyadic(2)));
}

TEST_CASE("poly_derivatives against exact rational differentiation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned J = 16, M = 10;
    std::vector<mpq_class> coef(J);
    std::vector<ComplexApprox> c;
    for (unsigned k = 0; k < J; ++k) {
      // rationals with small dyadic-unfriendly denominators, rounded to 200 bits
      coef[k] = mpq_class(num(rng), 7 * (k + 1));
      coef[k].canonicalize();
      Dyadic v = mpfp::div(Dyadic(mpz_class(coef[k].get_num())), Dyadic(mpz_class(coef[k].get_den())), Prec(200));
      c.push_back({ComplexDyadic(v), Dyadic::pow2(-190)});
    }
    Dyadic p = Dyadic(num(rng)).ldexp(-10);
    std::vector<Dyadic> eps(M, Dyadic::pow2(-60));
    auto r = poly_derivatives(c, p, M, eps, 120);
    std::vector<mpq_class> d = coef;
    for (unsigned m = 0; m < M; ++m) {
      mpq_class s = 0, x = p.to_mpq();
      for (unsigned k = d.size(); k-- > 0;) s = s * x + d[k];
      CAPTURE(m);
      CHECK(absq(r[m].value.re.to_mpq() - s) < eps[m].to_mpq());
      CHECK(r[m].value.im.is_zero());
      for (unsigned k = 0; k + 1 < d.size(); ++k) d[k] = mpq_class(k + 1) * d[k + 1];
      d.pop_back();
    }
  }
}

TEST_CASE("poly_derivatives refuses coarse inputs") {
  std::vector<ComplexApprox> c(8, {ComplexDyadic(Dyadic(1)), Dyadic::pow2(-10)});
  std::vector<Dyadic> eps(4, Dyadic::pow2(-30));
  CHECK_THROWS_AS(poly_derivatives(c, Dyadic(0), 4, eps, 80), PreconditionError);  // delta too large
  for (auto& x : c) x.eps = Dyadic::pow2(-60);
  CHECK_THROWS_AS(poly_derivatives(c, Dyadic(0), 4, eps, 20), PreconditionError);  // d too small
  CHECK_THROWS_AS(poly_derivatives(c, Dyadic(2), 4, eps, 80), PreconditionError);  // |p| > 1
  CHECK_NOTHROW(poly_derivatives(c, Dyadic(0), 4, eps, 80));
  // the input list is left alone
  CHECK(c[3].value == ComplexDyadic(Dyadic(1)));
}

TEST_CASE("Fp against the closed form of F") {
  for (double t : {3000.0, 20000.0}) {
    auto plan = params::make_plan({Dyadic::pow2(-1), Dyadic::from_double(t), Dyadic::pow2(-53)});
    TaylorCoefficients tc = compute_c2n(plan->counts.J, plan->eps.eps6);
    auto Fp = compute_Fp(*plan, tc);
    const auto& k = plan->counts;
    REQUIRE(Fp.size() == 3 * k.L - 2);
    for (unsigned m = k.M; m < Fp.size(); ++m) CHECK(Fp[m].value.is_zero());
    CBall ref = closed_F(plan->geom.p.value, 400);
    CHECK(cdist(Fp[0].value, ref) < plan->eps.eps5[0]);
    // higher derivatives: 4x precision sum of the exact coefficient derivatives
    auto E = euler_numbers(2 * k.J + 80);
    const mpfr_prec_t q = 4 * plan->wp.wpfp + 64;
    std::vector<CBall> cb;
    for (unsigned n = 0; n < k.J + 40; ++n) cb.push_back(brute_c2n(n, q, E));
    Ball p = Ball::exact(plan->geom.p.value, q);
    for (unsigned m = 0; m < k.M; m += 3) {
      CBall s(Ball::exact(Dyadic(0), q), Ball::exact(Dyadic(0), q));
      for (unsigned n = 0; n < cb.size(); ++n) {
        if (2 * n < m) continue;
        Ball f = Ball::exact(Dyadic(1), q);
        for (unsigned i = 0; i < m; ++i) f = f * Ball::exact(Dyadic(static_cast<long>(2 * n - i)), q);
        for (unsigned i = 0; i < 2 * n - m; ++i) f = f * p;
        s = s + f * cb[n];
      }
      CAPTURE(m);
      // the remaining tail beyond J+40 terms is far below eps5
      CHECK(cdist(Fp[m].value, s) < plan->eps.eps5[m]);
    }
  }
}

TEST_CASE("Fp at p = 0 has vanishing odd derivatives") {
  auto base = params::make_plan({Dyadic::pow2(-1), Dyadic(8000), Dyadic::pow2(-40)});
  params::RSPlan plan = *base;
  plan.geom.p = {Dyadic(0), plan.geom.p.eps};
  auto Fp = compute_Fp(plan, compute_c2n(plan.counts.J, plan.eps.eps6));
  for (unsigned m = 1; m < plan.counts.M; m += 2)
    CHECK(mpfp::abs_upper(Fp[m].value, Prec(30)) <= Fp[m].eps);
}

TEST_CASE("coefficient cache") {
  TaylorCoefficients tc = compute_c2n(16, Dyadic::pow2(-40));
  std::stringstream ss;
  write_coefficients(ss, tc);
  TaylorCoefficients back = read_coefficients(ss);
  CHECK(back.J == tc.J);
  CHECK(back.eps6 == tc.eps6);
  CHECK(back.wpc0 == tc.wpc0);
  CHECK(back.c2n == tc.c2n);
  std::ostringstream text;
  export_text(text, tc);
  CHECK(text.str().find("J 16") != std::string::npos);
  std::istringstream junk("RSZX....");
  CHECK_THROWS_AS(read_coefficients(junk), IoError);

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("rszeta-cache-test-" + std::to_string(std::random_device{}()));
  {
    CoefficientCache cache(dir);
    auto a = cache.get(16, Dyadic::pow2(-40));
    CHECK(cache.computations() == 1);
    CHECK(fs::exists(*cache.file()));
    auto b = cache.get(12, Dyadic::pow2(-30));  // covered
    CHECK(cache.computations() == 1);
    CHECK(b.c2n == a.c2n);
    CHECK(cache.last_error().empty());
  }
  {
    CoefficientCache cache(dir);  // fresh process view: reads the file
    auto a = cache.get(14, Dyadic::pow2(-40));
    CHECK(cache.computations() == 0);
    CHECK(a.J == 16);
    auto b = cache.get(20, Dyadic::pow2(-40));  // supersedes
    CHECK(cache.computations() == 1);
    CHECK(b.J == 20);
  }
  {
    std::ofstream(dir / "c2n.bin", std::ios::binary | std::ios::trunc) << "garbage";
    CoefficientCache cache(dir);
    auto a = cache.get(10, Dyadic::pow2(-30));
    CHECK(a.J == 10);
    CHECK(cache.computations() == 1);
  }
  fs::remove_all(dir);
}
