#include <doctest.h>

#include <cmath>

#include "rszeta/params/constants.hpp"
#include "rszeta/params/lemmas.hpp"
#include "rszeta/params/plan.hpp"

using namespace rszeta;
using namespace rszeta::params;
using mpfp::Prec;

namespace {

Dyadic half() { return Dyadic::pow2(-1); }

RSRequest req(double sigma, double t, int bits) {
  return {Dyadic::from_double(sigma), Dyadic::from_double(t), Dyadic::pow2(-bits)};
}

Dyadic dec(const char* s) { return mpfp::parse_decimal(s, Prec(200)); }

bool encloses(const Bound& b, double x) { return b.lower().to_double() <= x && x <= b.upper().to_double(); }

}  // namespace

TEST_CASE("constants at the critical line") {
  Constants c = constants_for(half());
  CHECK(c.b == Dyadic(2));
  CHECK(c.A == Dyadic(3));
  CHECK(c.B1 == Dyadic(1));
  // c = 3/(pi sqrt 2), rounded up
  Dyadic below = dec("0.67523723711782955216639939325505543699");
  CHECK(below < c.c);
  CHECK(c.c - below < dec("1e-38"));
  CHECK(!c.provenance.empty());
  CHECK(encloses(c.B2(), std::sqrt(M_PI)));
}

TEST_CASE("constants table invariants") {
  const auto& rows = ConstantsTable::instance().rows();
  REQUIRE(rows.size() > 100);
  Bound top = Bound(2) * sqrt(Bound(1) - Bound::log2());
  Bound pi = Bound::pi();
  for (const auto& r : rows) {
    CAPTURE(r.sigma.to_double());
    CHECK(Dyadic(2) <= r.b);
    CHECK(Dyadic(1) <= r.B1);
    CHECK(r.B1 <= top.upper());
    Bound ratio = Bound(r.c1) / Bound(r.c);
    if (r.sigma.sign() < 0) CHECK(ratio.upper() <= (pi / sqrt(Bound(2))).upper());
    if (r.sigma.sign() > 0) CHECK(ratio.upper() <= (pi * sqrt(Bound(2)) / Bound(7)).upper());
    CHECK(r.provenance.find(':') != std::string::npos);
  }
}

TEST_CASE("off-grid sigma merges its neighbours conservatively") {
  const auto& t = ConstantsTable::instance();
  Dyadic s = Dyadic::from_double(0.3);  // between 1/4 and 3/8
  Constants m = t.constants_for(s);
  Constants lo = t.constants_for(Dyadic::from_double(0.25));
  Constants hi = t.constants_for(Dyadic::from_double(0.375));
  CHECK(m.A == std::max(lo.A, hi.A));
  CHECK(m.c == std::max(lo.c, hi.c));
  CHECK(m.b == std::min(lo.b, hi.b));
  CHECK(m.B1 == std::min(lo.B1, hi.B1));
  // the closed form at 0.3 lies inside the merged bounds
  CHECK(std::pow(9.0, 0.3) <= m.A.to_double());
  CHECK_THROWS_AS(t.constants_for(Dyadic(100)), PrecisionUnattainable);
}

TEST_CASE("constants loader refuses bad files") {
  std::string head = "# version 1\n";
  std::string row = "1/2 2 0.6752372371178295521663993932550554369985 0.8 0.25 3 1";
  CHECK_NOTHROW(ConstantsTable::parse(head + row + " closed-form:right\n"));
  CHECK_THROWS_AS(ConstantsTable::parse(head + row + "\n"), IoError);
  CHECK_THROWS_AS(ConstantsTable::parse("# version 2\n" + row + " closed-form:right\n"), IoError);
  CHECK_THROWS_AS(ConstantsTable::parse(head + row + " unsourced\n"), IoError);
  CHECK_THROWS_AS(ConstantsTable::parse(head + "1/3 2 1 1 1 1 1 x:y\n"), IoError);
  // b below 2 is not a valid row
  CHECK_THROWS_AS(ConstantsTable::parse(head + "0 1.5 1 1 1 1 1 x:y\n"), IoError);
  ConstantsTable t = ConstantsTable::parse(head + row + " closed-form:right\n");
  // c is not dyadic: stored rounded up
  CHECK(Dyadic::from_double(0.6752372371178295) < t.rows()[0].c);
}

TEST_CASE("F_m matches the denominator of the monotonicity lemma") {
  // with pi^2 B1 a = 125 the quotient eps5(m)/F_m is a fixed multiple of the lemma's function at x = m
  Constants c = constants_for(half());
  RSGeometry g;
  g.a = Bound(125) / (Bound::pi() * Bound::pi());
  Dyadic eps4 = Dyadic::pow2(-40);
  auto ratio = [&](unsigned m) {
    Bound e5 = pow(Bound::pi() * Bound::pi() * g.a, Bound::rational(m, 3)) / (Bound(316) * Bound(c.A)) *
               sqrt(mpfp::factorial(m) / gamma(Bound::rational(m + 6, 3))) * Bound(eps4);
    double lf = log_f_increasing(Dyadic(static_cast<long>(m))).lo.to_double();
    return std::log((e5 / Constants::F(m)).approx()) - lf;
  };
  double r0 = ratio(1);
  for (unsigned m = 2; m < 12; ++m) CHECK(ratio(m) == doctest::Approx(r0).epsilon(1e-3));
}

TEST_CASE("D and T bound functions") {
  Constants c = constants_for(half());
  // T_0 = A Gamma(1/2)^(1/2)
  CHECK(encloses(c.T(0), 3 * std::pow(M_PI, 0.25)));
  // D(1,1) = A 2 B1^-1 (Gamma(3/2)/1!)^(1/2)
  CHECK(encloses(c.D(1, 1), 6 * std::sqrt(std::sqrt(M_PI) / 2)));
  CHECK_THROWS_AS(c.D(1, 2), PreconditionError);
  CHECK(encloses(Constants::F(1), 1.0));
  CHECK(encloses(Constants::F(0), std::sqrt(M_PI) / std::sqrt(2 * M_PI)));
}

TEST_CASE("geometry") {
  // 200-bit oracle values of a and p
  struct Case {
    double t;
    long N;
    const char* p;
  } cases[] = {
      {100, 3, "-0.97884560802865355879892119868763737"},
      {1000, 12, "-0.23132522020160048247149522365683947"},
      {10000, 39, "-0.7884560802865355879892119868763737"},
  };
  for (auto cs : cases) {
    CAPTURE(cs.t);
    for (unsigned long bits : {20UL, 64UL, 113UL}) {
      RSGeometry g = derive_geometry(req(0.5, cs.t, 10), bits);
      CHECK(g.N == cs.N);
      Dyadic diff = (g.p.value - dec(cs.p)).abs();
      CHECK(diff <= g.p.eps + Dyadic::pow2(-115));
      CHECK(g.p.eps == Dyadic::pow2(-static_cast<int64_t>(bits)));
      CHECK(Dyadic(-1) <= g.p.value);
      CHECK(g.p.value <= Dyadic(1));
      CHECK(g.A1 <= g.a_sigma.lower());
      CHECK(g.a_sigma.upper() < g.A1.ldexp(2));
    }
  }
  CHECK_THROWS_AS(derive_geometry(req(0.5, -1, 10), 10), PreconditionError);
}

TEST_CASE("choose_L agrees with an independent scan") {
  // L from a 200-bit scan of the main, secondary and third conditions (sigma = 1/2)
  struct Case {
    double t;
    int bits;
    unsigned L;
  } cases[] = {{1000, 10, 3}, {3000, 30, 6}, {3000, 53, 11}, {10000, 30, 5},
               {10000, 53, 10}, {10000, 100, 19}, {100000, 100, 14}};
  for (auto cs : cases) {
    CAPTURE(cs.t);
    CAPTURE(cs.bits);
    auto plan = make_plan(req(0.5, cs.t, cs.bits));
    CHECK(plan->counts.L == cs.L);
    CHECK(plan->counts.K == 3 * cs.L + 4);
  }
}

TEST_CASE("infeasible requests") {
  // t = 60: no L meets the side conditions
  try {
    make_plan({half(), Dyadic(60), mpfp::parse_decimal("1e-30", Prec(128))});
    FAIL("expected PrecisionUnattainable");
  } catch (const PrecisionUnattainable& e) {
    CHECK(e.reason == PrecisionUnattainable::Reason::Structural);
  }
  // t = 1000 at 2^-53: the main condition needs L = 14, the third condition allows L <= 4
  try {
    make_plan(req(0.5, 1000, 53));
    FAIL("expected PrecisionUnattainable");
  } catch (const PrecisionUnattainable& e) {
    CHECK(e.reason == PrecisionUnattainable::Reason::MainCondition);
  }
  CHECK_THROWS_AS(make_plan({half(), Dyadic(1000), Dyadic(2)}), PreconditionError);
  CHECK_THROWS_AS(make_plan({half(), Dyadic(1000), Dyadic(0)}), PreconditionError);
  // |sigma| > a/2
  CHECK_THROWS_AS(make_plan(req(8, 1000, 10)), PrecisionUnattainable);
}

TEST_CASE("feasibility frontier follows the side conditions") {
  // For each t the largest admissible L is floor bound by 3L < 2a^2/25; the plan must succeed
  // exactly when the main condition holds at some admissible L.
  for (double t : {300.0, 700.0, 1500.0, 4000.0, 12000.0}) {
    double a2 = t / (2 * M_PI);
    unsigned Lmax = 0;
    while (3.0 * (Lmax + 1) < 2 * a2 / 25 && 3.0 * (Lmax + 1) + 4 < 8 * a2 / 25) ++Lmax;
    REQUIRE(Lmax >= 1);
    double a = std::sqrt(a2);
    double c = 3 / (M_PI * std::sqrt(2.0));
    double A1 = std::exp2(std::floor(std::log2(std::sqrt(a))));
    // log2 of eps at which Lmax just passes
    double lhs = std::log2(3 * c * std::tgamma(Lmax / 2.0) / std::pow(2 * a, Lmax));
    double edge = lhs - std::log2(A1 / 3);
    CAPTURE(t);
    int ok_bits = static_cast<int>(std::floor(-edge)) - 2;
    int bad_bits = static_cast<int>(std::ceil(-edge)) + 2;
    if (ok_bits >= 1) CHECK_NOTHROW(make_plan(req(0.5, t, ok_bits)));
    CHECK_THROWS_AS(make_plan(req(0.5, t, bad_bits)), PrecisionUnattainable);
  }
}

TEST_CASE("plan invariants") {
  for (double sigma : {-2.0, 0.0, 0.5, 1.0, 3.0}) {
    for (double t : {3000.0, 20000.0}) {
      for (int bits : {20, 60, 120}) {
        CAPTURE(sigma);
        CAPTURE(t);
        CAPTURE(bits);
        PlanPtr p;
        try {
          p = make_plan(req(sigma, t, bits));
        } catch (const PrecisionUnattainable&) {
          continue;
        }
        const auto& tc = p->counts;
        const auto& e = p->eps;
        const auto& wp = p->wp;
        CHECK(tc.K == 3 * tc.L + 4);
        CHECK(tc.J >= 12);
        CHECK(tc.M <= 3 * tc.L - 2);
        // eps2 sits between eps a^sigma/6 and eps a^sigma/3
        Bound ea = Bound(e.eps) * p->geom.a_sigma;
        CHECK((ea / Bound(6)).upper() < e.eps2);
        CHECK(e.eps2 <= (ea / Bound(3)).upper());
        CHECK(e.eps4.sign() > 0);
        CHECK(e.eps6.sign() > 0);
        CHECK(e.eps6.mantissa() == 1);
        REQUIRE(e.eps5.size() == 3 * tc.L - 2);
        for (unsigned m = 0; m < e.eps5.size(); ++m) {
          CHECK(e.eps5[m].sign() > 0);
          CHECK(e.eps5_tilde[m] <= e.eps5[m]);
          // above M the derivative is dropped, so F_m must sit below eps5
          if (m >= tc.M) CHECK(Constants::F(m).certainly_lt(Bound(e.eps5[m])));
        }
        CHECK(wp.wptv == wp.wptcoef);
        for (unsigned k = 0; k + 1 < tc.L; ++k) {
          CHECK(wp.wptcoef[k + 1] <= wp.wptcoef[k]);
          CHECK(wp.wpd[k + 1] <= wp.wpd[k]);
        }
        for (unsigned k = 0; k < tc.L; ++k) {
          CHECK(wp.wpd[k] >= 6);
          CHECK(std::exp2(wp.wpd[k]) > 40.0 * tc.L * tc.L);
          CHECK(wp.wppi > wp.wptcoef[k]);
        }
        CHECK(std::exp2(wp.wpfp) > 44.0 * tc.J);
        CHECK(p->geom.p.eps <= Dyadic::pow2(-static_cast<int64_t>(wp.wpfp)));
        CHECK(wp.wpc.size() == tc.J);
        for (unsigned n = 0; n < tc.J; ++n) CHECK(wp.wpc[n] <= wp.wpc_outer);
        CHECK(p->gamma(2, 3).sign() > 0);
        CHECK(p->gamma(1, 0) < p->gamma(1, 1));
      }
    }
  }
}

TEST_CASE("J satisfies both truncation inequalities") {
  for (int bits : {20, 53, 100}) {
    auto p = make_plan(req(0.5, 10000, bits));
    const auto& tc = p->counts;
    const double M = tc.M, a = p->geom.a.approx();
    auto jv = [](double j) { return std::pow(2 * M_PI, j) / std::tgamma(j + 1); };
    double h = p->eps.eps4.to_double() / (632 * p->consts.A.to_double());
    if (M >= 1) h = std::min(h, h / M * std::pow(M_PI * M_PI * a * std::sqrt(3.0) * M_E * M_E / (M * M), (M - 1) / 3));
    for (unsigned m = 0; m < tc.M; ++m) h = std::min(h, p->eps.eps5[m].to_double() / (2 * std::tgamma(m + 1.0)));
    CAPTURE(bits);
    CHECK(jv(tc.J) <= h * (1 + 1e-3));
    // first such J: one step earlier fails (up to the scratch-precision slack)
    if (tc.J > 12) CHECK(jv(tc.J - 1) > h * (1 - 1e-3));
  }
}

TEST_CASE("lemma: gamma ratio bounded by 1 and its infimum") {
  Enclosure floor = gamma_ratio_one_floor();
  CHECK(floor.lo.to_double() == doctest::Approx(0.318741).epsilon(1e-6));
  ScanReport r = scan_gamma_ratio_one(10000, 1e-6, 1e4);
  CHECK(r.points == 10000);
  CHECK(r.failures == 0);
}

TEST_CASE("lemma: second gamma ratio lies in (1, 1.05599...]") {
  Enclosure top = gamma_ratio_two_ceiling();
  CHECK(top.lo.to_double() == doctest::Approx(1.05599).epsilon(1e-5));
  ScanReport r = scan_gamma_ratio_two(10000, 3, 1e4);
  CHECK(r.points == 10000);
  CHECK(r.failures == 0);
}

TEST_CASE("lemma: monotonicity of the eps5/F_m shape") {
  ScanReport r = scan_f_increasing(10000, 1e-6, 1500);
  CHECK(r.failures == 0);
  // the function turns over near x = 1506: past that point it decreases
  Enclosure a = log_f_increasing(Dyadic(1600)), b = log_f_increasing(Dyadic(2000));
  CHECK(b.hi < a.lo);
}
