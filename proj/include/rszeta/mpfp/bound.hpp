#pragma once
#include <cstdint>
#include <string>

#include "rszeta/mpfp/dyadic.hpp"
#include "rszeta/mpfp/mpfr.hpp"

namespace rszeta::mpfp {

// Closed interval with outward rounding at scratch precision, used by the planners.
class Bound {
 public:
  static constexpr mpfr_prec_t kScratch = 15;

  Bound() : Bound(0L) {}
  Bound(long v);            // NOLINT
  Bound(int v) : Bound(static_cast<long>(v)) {}  // NOLINT
  Bound(unsigned v) : Bound(static_cast<long>(v)) {}  // NOLINT
  Bound(unsigned long v) : Bound(static_cast<long>(v)) {}  // NOLINT
  Bound(const Dyadic& v);   // NOLINT
  static Bound between(const Dyadic& lo, const Dyadic& hi);
  static Bound rational(long num, long den);
  static Bound pi();
  static Bound e();
  static Bound log2();
  static Bound euler_gamma_min();  // lower bound of min Gamma on (0,inf)

  Dyadic lower() const { return from_mpfr(lo_.get()); }
  Dyadic upper() const { return from_mpfr(hi_.get()); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }
  double approx() const;
  std::string str() const;

  Bound operator-() const;
  friend Bound operator+(const Bound& a, const Bound& b);
  friend Bound operator-(const Bound& a, const Bound& b);
  friend Bound operator*(const Bound& a, const Bound& b);
  friend Bound operator/(const Bound& a, const Bound& b);
  Bound& operator+=(const Bound& b) { return *this = *this + b; }
  Bound& operator*=(const Bound& b) { return *this = *this * b; }

  friend Bound sqrt(const Bound& x);
  friend Bound log(const Bound& x);
  friend Bound exp(const Bound& x);
  friend Bound pow(const Bound& x, const Bound& y);  // x > 0
  friend Bound pow(const Bound& x, long n);          // x >= 0
  friend Bound gamma(const Bound& x);                // x > 0
  friend Bound lgamma(const Bound& x);               // x > 0
  friend Bound abs(const Bound& x);
  friend Bound max(const Bound& a, const Bound& b);
  friend Bound min(const Bound& a, const Bound& b);
  friend Bound cosh(const Bound& x);

  bool certainly_lt(const Bound& o) const;
  bool certainly_le(const Bound& o) const;
  bool certainly_positive() const;
  bool contains(const Dyadic& x) const;

  // least integer d with 2^d > every point of the interval (hi > 0 required)
  int64_t mag_upper() const;
  // mag of the lower end point (lo > 0 required)
  int64_t mag_lower() const;

 private:
  Bound(Mpfr lo, Mpfr hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
  Mpfr lo_{kScratch}, hi_{kScratch};
};

Bound factorial(unsigned long n);

// Least natural d with 2^d > x; x is an upper-bounded quantity.
inline int64_t least_pow2_exceeding(const Bound& x) { return x.mag_upper(); }

}  // namespace rszeta::mpfp
