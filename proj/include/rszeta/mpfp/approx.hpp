#pragma once
#include <functional>
#include <span>
#include <vector>

#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::mpfp {

// value with |value - true| < eps
template <class V>
struct ErrorBounded {
  V value;
  Dyadic eps;
};
using RealApprox = ErrorBounded<Dyadic>;
using ComplexApprox = ErrorBounded<ComplexDyadic>;

// scratch helpers: dyadic end points of bounds
inline Dyadic lower_dyadic(const Bound& b) { return b.lower(); }
inline Dyadic upper_dyadic(const Bound& b) { return b.upper(); }

// Guarded summation of N terms, each bounded by A in absolute value.
struct SumPlan {
  bool zero = false;    // N*A < eps: the sum is returned as exact 0
  Dyadic delta;         // per-term tolerance, eps/(2N) rounded down
  unsigned long d = 0;  // summation precision
};
SumPlan plan_sum(std::size_t N, const Dyadic& A, const Dyadic& eps);

template <class V>
using TermProducer = std::function<ErrorBounded<V>(std::size_t index, const Dyadic& delta)>;

// Terms are requested in order 0..N-1 and added in that order.
// min_prec lets a caller impose a coarser-grained precision ladder on top.
template <class V>
ErrorBounded<V> sum_with_error(std::size_t N, const TermProducer<V>& term, const Dyadic& A,
                               const Dyadic& eps, unsigned long min_prec = 0) {
  SumPlan plan = plan_sum(N, A, eps);
  if (plan.zero) return {V{}, eps};
  Prec p(std::max(plan.d, min_prec));
  V acc{};
  for (std::size_t n = 0; n < N; ++n) {
    ErrorBounded<V> a = term(n, plan.delta);
    if (plan.delta < a.eps) throw PreconditionError("sum_with_error: term above requested tolerance");
    acc = add(acc, a.value, p);
  }
  return {acc, eps};
}

// Precision of the convolution sum: least d with 2^d > 10(n+4) and
// 2^d > (2.385 M_n + 2.5 N_n)/eps.
unsigned long convolution_precision(std::size_t n, std::span<const Dyadic> A, std::span<const Dyadic> B,
                                    const Dyadic& eps);

// sum_{k=0}^n v[k] w[n-k]; v[k] must be within 2^-d A_k and w[k] within 2^-d B_k.
template <class V>
ErrorBounded<V> convolution(std::span<const ErrorBounded<V>> v, std::span<const ErrorBounded<V>> w,
                            std::size_t n, std::span<const Dyadic> A, std::span<const Dyadic> B,
                            const Dyadic& eps, unsigned long* used_prec = nullptr) {
  if (v.size() <= n || w.size() <= n || A.size() <= n || B.size() <= n)
    throw PreconditionError("convolution: sequences shorter than n+1");
  unsigned long d = convolution_precision(n, A, B, eps);
  if (used_prec) *used_prec = d;
  Prec p(d);
  for (std::size_t k = 0; k <= n; ++k) {
    if (A[k].ldexp(-static_cast<int64_t>(d)) < v[k].eps || B[k].ldexp(-static_cast<int64_t>(d)) < w[k].eps)
      throw PreconditionError("convolution: input tolerance above 2^-d times its bound");
  }
  V acc{};
  for (std::size_t k = 0; k <= n; ++k) acc = add(acc, mul(v[k].value, w[n - k].value, p), p);
  return {acc, eps};
}

}  // namespace rszeta::mpfp
