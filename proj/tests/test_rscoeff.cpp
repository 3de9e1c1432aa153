#include <doctest.h>

#include <random>

#include "rszeta/params/plan.hpp"
#include "rszeta/rscoeff/dtable.hpp"
#include "oracles.hpp"

using namespace rszeta;
using namespace rszeta::rscoeff;
using mpfp::Prec;
using testoracle::exact_d;
using testoracle::absq;


TEST_CASE("first rows are the known polynomials in sigma") {
  for (double sd : {-3.0, -0.5, 0.0, 0.25, 0.5, 2.0, 7.0}) {
    mpq_class s(sd), u = s - mpq_class(1, 2);
    auto d = exact_d(s, 3);
    CHECK(d[1][0] == mpq_class(1, 12));
    CHECK(d[1][1] == -u);
    CHECK(d[2][0] == mpq_class(1, 288));
    CHECK(d[2][1] == -u / 12);
    CHECK(d[2][2] == u * u / 2 - mpq_class(1, 4));
    CHECK(d[2][3] == u * u + u - mpq_class(1, 12));
  }
}

TEST_CASE("spot values at working precision") {
  std::vector<unsigned long> wpd(5, 64);
  auto zero = [](unsigned, unsigned) { return Dyadic::pow2(-60); };
  DTable t = compute_d(Dyadic::pow2(-1), 5, wpd, zero);
  // 1/12 and 1/288 rounded to 64 bits
  CHECK(t.value(1, 0) == mpfp::div(Dyadic(1), Dyadic(12), Prec(64)));
  CHECK(absq(t.value(2, 0).to_mpq() - mpq_class(1, 288)) <= mpq_class(1, 288) * Dyadic::pow2(-62).to_mpq());
  CHECK(t.value(1, 1).is_zero());
  CHECK(t.value(2, 1).is_zero());
  CHECK(t.value(2, -1).is_zero());
  CHECK(t.value(2, 4).is_zero());
  CHECK(t.rows() == 5);
  CHECK(DTable::row_length(3) == 5);
}

TEST_CASE("plan d-table within certified bounds of the exact recurrence") {
  for (double sigma : {0.0, 0.5, 2.0}) {
    params::RSRequest r{Dyadic::from_double(sigma), Dyadic(20000), Dyadic::pow2(-120)};
    auto plan = params::make_plan(r);
    REQUIRE(plan->counts.L >= 13);
    DTable t = compute_d(*plan);
    auto ex = exact_d(mpq_class(sigma), 13);
    for (unsigned n = 0; n <= 12; ++n) {
      for (unsigned k = 0; k <= 3 * n / 2; ++k) {
        CAPTURE(sigma);
        CAPTURE(n);
        CAPTURE(k);
        mpq_class err = absq(t.value(n, k).to_mpq() - ex[n][k]);
        CHECK(err < t.target(n, k).to_mpq());
        CHECK(t.target(n, k).sign() > 0);
      }
    }
  }
}

TEST_CASE("random sigma rows stay within target") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-64, 64);
  for (int trial = 0; trial < 10; ++trial) {
    Dyadic s = Dyadic(num(rng)).ldexp(-4);
    params::RSRequest r{s, Dyadic(12000), Dyadic::pow2(-80)};
    auto plan = params::make_plan(r);
    DTable t = compute_d(*plan);
    auto ex = exact_d(s.to_mpq(), plan->counts.L);
    for (unsigned n = 0; n < plan->counts.L; ++n)
      for (unsigned k = 0; k <= 3 * n / 2; ++k) CHECK(absq(t.value(n, k).to_mpq() - ex[n][k]) < t.target(n, k).to_mpq());
  }
}
