#pragma once
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "rszeta/mpfp/errors.hpp"

namespace rszeta::mpfp {

// Working precision in bits. Passed explicitly to every rounded operation.
struct Prec {
  unsigned long d;
  explicit Prec(unsigned long bits) : d(bits) {
    if (bits < 1) throw PreconditionError("precision must be at least 1 bit");
  }
};
using PrecisionContext = Prec;

// +-m*2^e with m odd, or zero. Mantissa unbounded, exponent 64-bit.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : m_(v) { normalize(); }  // NOLINT: integers convert
  Dyadic(int v) : Dyadic(static_cast<long>(v)) {}
  Dyadic(const mpz_class& v) : m_(v) { normalize(); }  // NOLINT

  static Dyadic from_parts(mpz_class m, int64_t e);
  static Dyadic from_double(double x);
  static Dyadic pow2(int64_t e) { return from_parts(mpz_class(1), e); }
  // exact conversion; throws DomainError when the denominator is not a power of two
  static Dyadic from_mpq(const mpq_class& q);

  int sign() const { return sgn(m_); }
  bool is_zero() const { return m_ == 0; }
  const mpz_class& mantissa() const { return m_; }
  int64_t exponent() const { return e_; }
  // bc(x): m < 2^bc <= 2m
  uint64_t bitcount() const;

  Dyadic operator-() const { return from_parts(-m_, e_); }
  Dyadic abs() const { return from_parts(::abs(m_), e_); }
  Dyadic ldexp(int64_t k) const { return is_zero() ? *this : from_parts(m_, e_ + k); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.e_ == b.e_ && a.m_ == b.m_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  mpq_class to_mpq() const;
  double to_double() const;
  bool is_integer() const { return is_zero() || e_ >= 0; }
  // floor for values with small magnitude
  mpz_class floor() const;
  std::string repr() const;  // "m*2^e"

 private:
  void normalize();
  mpz_class m_;
  int64_t e_ = 0;
};

// 2^(b-1) <= |x| < 2^b
int64_t mag(const Dyadic& x);

Dyadic round_even(const Dyadic& x, Prec p);

enum class Dir { Down, Up };  // toward -inf / +inf
Dyadic round_dir(const Dyadic& x, Prec p, Dir dir);

// Round sign*(q + tail)*2^e where 0 <= tail < 1 and tail > 0 iff sticky.
// With sticky set, q needs at least p.d+2 bits so the tail cannot create a tie.
Dyadic round_quotient(int sign, const mpz_class& q, int64_t e, bool sticky, Prec p);

enum class Op { Add, Sub, Mul, Div };
Dyadic arith(Op op, const Dyadic& a, const Dyadic& b, Prec p);
Dyadic add(const Dyadic& a, const Dyadic& b, Prec p);
Dyadic sub(const Dyadic& a, const Dyadic& b, Prec p);
Dyadic mul(const Dyadic& a, const Dyadic& b, Prec p);
Dyadic div(const Dyadic& a, const Dyadic& b, Prec p);
Dyadic sqrt(const Dyadic& a, Prec p);
// directed versions for bound bookkeeping
Dyadic add_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir);
Dyadic mul_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir);
Dyadic div_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir);

struct ComplexDyadic {
  Dyadic re, im;
  ComplexDyadic() = default;
  ComplexDyadic(Dyadic r) : re(std::move(r)) {}  // NOLINT
  ComplexDyadic(long r) : re(r) {}               // NOLINT
  ComplexDyadic(Dyadic r, Dyadic i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexDyadic i() { return {Dyadic(0), Dyadic(1)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ComplexDyadic conj() const { return {re, -im}; }
  ComplexDyadic operator-() const { return {-re, -im}; }
  ComplexDyadic times_i() const { return {-im, re}; }
  // multiply by i^k exactly
  ComplexDyadic rotate(long k) const;
  ComplexDyadic ldexp(int64_t k) const { return {re.ldexp(k), im.ldexp(k)}; }
  friend bool operator==(const ComplexDyadic&, const ComplexDyadic&) = default;
  friend ComplexDyadic operator+(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexDyadic operator-(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexDyadic operator*(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

// |a| < 2^b, at most one above the optimum
int64_t mag(const ComplexDyadic& a);

ComplexDyadic round_even(const ComplexDyadic& a, Prec p);
ComplexDyadic add(const ComplexDyadic& a, const ComplexDyadic& b, Prec p);
ComplexDyadic sub(const ComplexDyadic& a, const ComplexDyadic& b, Prec p);
// real times complex, one rounding per component
ComplexDyadic mul(const Dyadic& x, const ComplexDyadic& a, Prec p);
ComplexDyadic div(const ComplexDyadic& a, const Dyadic& x, Prec p);
// Exact product rounded componentwise. The default complex product.
ComplexDyadic complex_mul_correct(const ComplexDyadic& a, const ComplexDyadic& b, Prec p);
inline ComplexDyadic mul(const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  return complex_mul_correct(a, b, p);
}
// Schoolbook product with four rounded products; only (1+eta_3).
ComplexDyadic complex_mul_componentwise(const ComplexDyadic& a, const ComplexDyadic& b, Prec p);
ComplexDyadic complex_arith(Op op, const ComplexDyadic& a, const ComplexDyadic& b, Prec p);

// Upper bound for |a|, rounded up at p bits.
Dyadic abs_upper(const ComplexDyadic& a, Prec p);

// Decimal text rounded half-even to `digits` places after the point.
std::string to_fixed(const Dyadic& x, int digits);
// Parses [-]ddd[.ddd][e[-]dd]. Exact when the value is dyadic; otherwise rounded
// to nearest at p bits and *exact is cleared.
Dyadic parse_decimal(const std::string& s, Prec p, bool* exact = nullptr);
mpq_class parse_rational(const std::string& s);

}  // namespace rszeta::mpfp
