#include "rszeta/zetasum/zetasum.hpp"

#include <algorithm>
#include <vector>

#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/elementary.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/params/plan.hpp"

namespace rszeta::zetasum {

using mpfp::Bound;
using mpfp::Prec;

namespace {

void check(const ComplexDyadic& s, long N) {
  if (N < 1) throw PreconditionError("zetasum: N must be positive");
  if (!(Bound(8) * Bound::pi()).certainly_lt(Bound(s.im)))
    throw PreconditionError("zetasum: needs t > 8 pi");
}

// exp(-s log n) at d, log n given at d
ComplexDyadic term(const ComplexDyadic& s, const Dyadic& logn, Prec d) {
  ComplexDyadic x = mpfp::mul(logn, s, d);
  return mpfp::exp(-x, d);
}

// exact sum rounded once
ComplexApprox finish(const std::vector<ComplexDyadic>& a, unsigned long wpsum, const Dyadic& eps1) {
  ComplexDyadic acc(Dyadic(0), Dyadic(0));
  for (const auto& x : a) acc = acc + x;
  return {mpfp::round_even(acc, Prec(wpsum)), eps1};
}

}  // namespace

unsigned long term_precision(const ComplexDyadic& s, long N, const Dyadic& eps1) {
  return params::sum_precision(s.re, s.im, N, eps1) + 10;
}

ComplexApprox zetasum(const ComplexDyadic& s, long N, const Dyadic& eps1) {
  check(s, N);
  if (N == 1) return {ComplexDyadic(Dyadic(1)), eps1};
  const unsigned long wpsum = params::sum_precision(s.re, s.im, N, eps1);
  Prec d(wpsum + 10);
  std::vector<ComplexDyadic> a{ComplexDyadic(Dyadic(1))};
  for (long n = 2; n <= N; ++n) a.push_back(term(s, mpfp::log(Dyadic(n), d), d));
  return finish(a, wpsum, eps1);
}

std::pair<ComplexApprox, ComplexApprox> zetasum_pair(const ComplexDyadic& s, const Dyadic& eps1,
                                                     const ComplexDyadic& s2, const Dyadic& eps1b, long N) {
  check(s, N);
  check(s2, N);
  const unsigned long w1 = params::sum_precision(s.re, s.im, N, eps1);
  const unsigned long w2 = params::sum_precision(s2.re, s2.im, N, eps1b);
  if (N == 1) return {{ComplexDyadic(Dyadic(1)), eps1}, {ComplexDyadic(Dyadic(1)), eps1b}};
  Prec d1(w1 + 10), d2(w2 + 10), dl(std::max(w1, w2) + 10);
  std::vector<ComplexDyadic> a{ComplexDyadic(Dyadic(1))}, b{ComplexDyadic(Dyadic(1))};
  for (long n = 2; n <= N; ++n) {
    // a log correctly rounded at the larger precision is also within 2^-d of the smaller
    Dyadic l = mpfp::log(Dyadic(n), dl);
    a.push_back(term(s, l, d1));
    b.push_back(term(s2, l, d2));
  }
  return {finish(a, w1, eps1), finish(b, w2, eps1b)};
}

}  // namespace rszeta::zetasum
