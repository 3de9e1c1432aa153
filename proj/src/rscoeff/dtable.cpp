#include "rszeta/rscoeff/dtable.hpp"

#include "rszeta/mpfp/errors.hpp"

namespace rszeta::rscoeff {

using mpfp::Bound;
using mpfp::Prec;

namespace {
const Dyadic kZero;
}

const Dyadic& DTable::value(unsigned n, long k) const {
  if (k < 0 || k >= static_cast<long>(row_length(n))) return kZero;
  return d_.at(n)[static_cast<std::size_t>(k)].value;
}

DTable compute_d(const Dyadic& sigma, unsigned L, const std::vector<unsigned long>& wpd,
                 const std::function<Dyadic(unsigned, unsigned)>& target) {
  if (L == 0) throw PreconditionError("compute_d: L must be positive");
  if (wpd.size() < L) throw PreconditionError("compute_d: wpd shorter than L");
  DTable t;
  t.d_.push_back({RealApprox{Dyadic(1), target(0, 0)}});
  if (L == 1) return t;
  const Dyadic psigma = mpfp::sub(Dyadic(1), sigma.ldexp(1), Prec(wpd[1]));
  for (unsigned n = 1; n < L; ++n) {
    Prec p(wpd[n]);
    std::vector<RealApprox> row(DTable::row_length(n));
    for (unsigned k = 0; k < row.size(); ++k) {
      long m = 3L * n - 2L * k;
      Dyadic v;
      if (m != 0) {
        Dyadic m1 = mpfp::div(Dyadic(1), Dyadic(m), p);
        Dyadic c1 = m1.ldexp(-2);
        Dyadic c2 = mpfp::mul(psigma, m1, p).ldexp(-1);
        Dyadic c3(-(m + 1));
        v = mpfp::mul(c3, t.value(n - 1, static_cast<long>(k) - 2), p);
        v = mpfp::add(v, mpfp::mul(c1, t.value(n - 1, k), p), p);
        v = mpfp::add(v, mpfp::mul(c2, t.value(n - 1, static_cast<long>(k) - 1), p), p);
      } else {
        for (unsigned r = 0; r < k; ++r) {
          mpz_class f2, f1;
          mpz_fac_ui(f2.get_mpz_t(), 2 * (k - r));
          mpz_fac_ui(f1.get_mpz_t(), k - r);
          Dyadic add = mpfp::mul(row[r].value, Dyadic(mpz_class(f2 / f1)), p);
          v = (k - r) % 2 == 0 ? mpfp::sub(v, add, p) : mpfp::add(v, add, p);
        }
      }
      row[k] = {v, target(n, k)};
    }
    t.d_.push_back(std::move(row));
  }
  return t;
}

Dyadic d_target(const params::RSPlan& plan, unsigned n, unsigned k) {
  // x = 3n/2 - k may be a half-integer: f_x = 4/((2x+2)(2x+4))
  long x2 = 3L * n - 2L * k;
  Bound f = Bound(4) / (Bound(x2 + 2) * Bound(x2 + 4));
  return (f * Bound(plan.gamma(n, k))).lower();
}

DTable compute_d(const params::RSPlan& plan) {
  return compute_d(plan.req.sigma, plan.counts.L, plan.wp.wpd,
                   [&](unsigned n, unsigned k) { return d_target(plan, n, k); });
}

}  // namespace rszeta::rscoeff
