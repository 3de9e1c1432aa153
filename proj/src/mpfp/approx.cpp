#include "rszeta/mpfp/approx.hpp"

namespace rszeta::mpfp {

SumPlan plan_sum(std::size_t N, const Dyadic& A, const Dyadic& eps) {
  if (eps.sign() <= 0) throw PreconditionError("sum_with_error: eps must be positive");
  SumPlan plan;
  if (N == 0 || A.is_zero() || (Bound(static_cast<long>(N)) * Bound(A)).certainly_lt(Bound(eps))) {
    plan.zero = true;
    return plan;
  }
  plan.delta = div_dir(eps, Dyadic(static_cast<long>(2 * N)), Prec(32), Dir::Down);
  Bound n(static_cast<long>(N));
  int64_t d1 = (Bound(10) * (n + Bound(1))).mag_upper();
  Bound n3 = n + Bound(3);
  int64_t d2 = (Bound::rational(22, 10) * Bound(A) * n3 * n3 / Bound(eps)).mag_upper();
  plan.d = static_cast<unsigned long>(std::max<int64_t>({d1, d2, 1}) + 1);
  return plan;
}

unsigned long convolution_precision(std::size_t n, std::span<const Dyadic> A, std::span<const Dyadic> B,
                                    const Dyadic& eps) {
  Bound M(0), Nn(0);
  for (std::size_t k = 0; k <= n; ++k) {
    Bound ab = Bound(A[k]) * Bound(B[n - k]);
    M += Bound(static_cast<long>(n - k + 4)) * ab;
    Nn += ab;
  }
  Bound x = (Bound::rational(2385, 1000) * M + Bound::rational(25, 10) * Nn) / Bound(eps);
  int64_t d1 = Bound(static_cast<long>(10 * (n + 4))).mag_upper();
  int64_t d2 = x.certainly_positive() ? x.mag_upper() : 1;
  return static_cast<unsigned long>(std::max<int64_t>({d1, d2, 1}));
}

}  // namespace rszeta::mpfp
