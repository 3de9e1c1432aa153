#include "rszeta/mpfp/dyadic.hpp"

#include <cmath>
#include <limits>

namespace rszeta::mpfp {

namespace {

uint64_t bits_of(const mpz_class& m) { return m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2); }

// Low `n` bits of non-negative q compared with 2^(n-1): -1, 0, 1.
int cmp_half(const mpz_class& q, uint64_t n) {
  // index of lowest set bit decides quickly
  if (n == 0) return -1;
  if (!mpz_tstbit(q.get_mpz_t(), n - 1)) return -1;
  mp_bitcnt_t low = mpz_scan1(q.get_mpz_t(), 0);
  return low < n - 1 ? 1 : 0;
}

bool low_bits_zero(const mpz_class& q, uint64_t n) {
  if (n == 0 || q == 0) return true;
  return mpz_scan1(q.get_mpz_t(), 0) >= n;
}

}  // namespace

void Dyadic::normalize() {
  if (m_ == 0) {
    e_ = 0;
    return;
  }
  mp_bitcnt_t z = mpz_scan1(m_.get_mpz_t(), 0);
  if (z > 0) {
    mpz_tdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), z);
    e_ += static_cast<int64_t>(z);
  }
}

Dyadic Dyadic::from_parts(mpz_class m, int64_t e) {
  Dyadic r;
  r.m_ = std::move(m);
  r.e_ = e;
  r.normalize();
  return r;
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite double");
  if (x == 0) return {};
  int e;
  double f = std::frexp(x, &e);
  // f in [0.5,1): 53 bits of mantissa
  double scaled = std::ldexp(f, 53);
  mpz_class m;
  mpz_set_d(m.get_mpz_t(), scaled);
  return from_parts(m, e - 53);
}

Dyadic Dyadic::from_mpq(const mpq_class& q) {
  const mpz_class& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) throw DomainError("rational is not dyadic");
  int64_t k = static_cast<int64_t>(mpz_scan1(den.get_mpz_t(), 0));
  return from_parts(q.get_num(), -k);
}

uint64_t Dyadic::bitcount() const { return bits_of(m_); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.e_ <= b.e_) {
    mpz_class t = b.m_;
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e_ - a.e_));
    return Dyadic::from_parts(a.m_ + t, a.e_);
  }
  return b + a;
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Dyadic r;
  r.m_ = a.m_ * b.m_;  // product of odd numbers stays odd
  r.e_ = a.e_ + b.e_;
  return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  int64_t ma = mag(a), mb = mag(b);
  if (ma != mb) return sa > 0 ? ma <=> mb : mb <=> ma;
  int c = (a - b).sign();
  return c <=> 0;
}

mpq_class Dyadic::to_mpq() const {
  mpq_class q(m_);
  if (e_ >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e_));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e_));
  }
  return q;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long ex;
  double d = mpz_get_d_2exp(&ex, m_.get_mpz_t());
  int64_t total = ex + e_;
  if (total > 2000) return d > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
  if (total < -2000) return 0.0;
  return std::ldexp(d, static_cast<int>(total));
}

mpz_class Dyadic::floor() const {
  mpz_class r;
  if (e_ >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), m_.get_mpz_t(), static_cast<mp_bitcnt_t>(e_));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), m_.get_mpz_t(), static_cast<mp_bitcnt_t>(-e_));
  }
  return r;
}

std::string Dyadic::repr() const {
  return m_.get_str() + "*2^" + std::to_string(e_);
}

int64_t mag(const Dyadic& x) {
  if (x.is_zero()) throw DomainError("mag(0) is undefined");
  return x.exponent() + static_cast<int64_t>(x.bitcount());
}

Dyadic round_quotient(int sign, const mpz_class& q, int64_t e, bool sticky, Prec p) {
  if (q == 0) {
    if (sticky) throw PreconditionError("round_quotient: sticky tail without quotient bits");
    return {};
  }
  uint64_t n = bits_of(q);
  if (sticky && n < p.d + 2) throw PreconditionError("round_quotient: too few quotient bits");
  if (n <= p.d) return Dyadic::from_parts(sign < 0 ? mpz_class(-q) : q, e);
  uint64_t shift = n - p.d;
  mpz_class hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), q.get_mpz_t(), shift);
  int c = cmp_half(q, shift);
  bool up = c > 0 || (c == 0 && (sticky || mpz_odd_p(hi.get_mpz_t())));
  if (up) hi += 1;
  if (sign < 0) hi = -hi;
  return Dyadic::from_parts(hi, e + static_cast<int64_t>(shift));
}

namespace {

Dyadic round_quotient_dir(int sign, const mpz_class& q, int64_t e, bool sticky, Prec p, Dir dir) {
  if (q == 0) return {};
  uint64_t n = bits_of(q);
  bool away = (dir == Dir::Up) == (sign > 0);
  if (n <= p.d) {
    if (!sticky) return Dyadic::from_parts(sign < 0 ? mpz_class(-q) : q, e);
    // grid is finer than the tail: widen by one unit of the last place
    mpz_class r = away ? mpz_class(q + 1) : q;
    return Dyadic::from_parts(sign < 0 ? mpz_class(-r) : r, e);
  }
  uint64_t shift = n - p.d;
  mpz_class hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), q.get_mpz_t(), shift);
  bool inexact = sticky || !low_bits_zero(q, shift);
  if (away && inexact) hi += 1;
  if (sign < 0) hi = -hi;
  return Dyadic::from_parts(hi, e + static_cast<int64_t>(shift));
}

}  // namespace

Dyadic round_even(const Dyadic& x, Prec p) {
  if (x.is_zero() || x.bitcount() <= p.d) return x;
  return round_quotient(x.sign(), ::abs(x.mantissa()), x.exponent(), false, p);
}

Dyadic round_dir(const Dyadic& x, Prec p, Dir dir) {
  if (x.is_zero() || x.bitcount() <= p.d) return x;
  return round_quotient_dir(x.sign(), ::abs(x.mantissa()), x.exponent(), false, p, dir);
}

namespace {

// Replace a far smaller addend by a tiny stand-in with the same effect on rounding.
// x lies on the lattice 2^h that also carries every breakpoint at p bits near x.
Dyadic shrink_addend(const Dyadic& x, const Dyadic& y, Prec p) {
  int64_t h = std::min<int64_t>(x.exponent(), mag(x) - static_cast<int64_t>(p.d) - 2);
  if (mag(y) <= h - 1) return Dyadic::pow2(h - 2) * Dyadic(y.sign());
  return y;
}

Dyadic sum_for_rounding(const Dyadic& a, const Dyadic& b, Prec p) {
  if (a.is_zero() || b.is_zero()) return a + b;
  if (mag(a) >= mag(b)) return a + shrink_addend(a, b, p);
  return shrink_addend(b, a, p) + b;
}

struct Quot {
  int sign;
  mpz_class q;
  int64_t e;
  bool sticky;
};

Quot quotient(const Dyadic& a, const Dyadic& b, Prec p) {
  if (b.is_zero()) throw DomainError("division by zero");
  mpz_class ma = ::abs(a.mantissa()), mb = ::abs(b.mantissa());
  int64_t s = static_cast<int64_t>(p.d) + 3 + static_cast<int64_t>(bits_of(mb)) -
              static_cast<int64_t>(bits_of(ma));
  if (s < 0) s = 0;
  mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  Quot r;
  r.sign = a.sign() * b.sign();
  mpz_class rem;
  mpz_tdiv_qr(r.q.get_mpz_t(), rem.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
  r.e = a.exponent() - b.exponent() - s;
  r.sticky = rem != 0;
  return r;
}

}  // namespace

Dyadic add(const Dyadic& a, const Dyadic& b, Prec p) { return round_even(sum_for_rounding(a, b, p), p); }
Dyadic sub(const Dyadic& a, const Dyadic& b, Prec p) { return add(a, -b, p); }
Dyadic mul(const Dyadic& a, const Dyadic& b, Prec p) { return round_even(a * b, p); }

Dyadic div(const Dyadic& a, const Dyadic& b, Prec p) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return {};
  Quot q = quotient(a, b, p);
  return round_quotient(q.sign, q.q, q.e, q.sticky, p);
}

Dyadic add_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir) {
  return round_dir(sum_for_rounding(a, b, p), p, dir);
}
Dyadic mul_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir) { return round_dir(a * b, p, dir); }
Dyadic div_dir(const Dyadic& a, const Dyadic& b, Prec p, Dir dir) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return {};
  Quot q = quotient(a, b, p);
  return round_quotient_dir(q.sign, q.q, q.e, q.sticky, p, dir);
}

Dyadic sqrt(const Dyadic& a, Prec p) {
  if (a.sign() < 0) throw DomainError("sqrt of negative number");
  if (a.is_zero()) return {};
  mpz_class m = a.mantissa();
  int64_t e = a.exponent();
  if (e % 2 != 0) {
    m <<= 1;
    e -= 1;
  }
  int64_t want = 2 * (static_cast<int64_t>(p.d) + 2) - static_cast<int64_t>(bits_of(m));
  int64_t k = want > 0 ? (want + 1) / 2 : 0;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * k));
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  return round_quotient(1, root, (e - 2 * k) / 2, rem != 0, p);
}

Dyadic arith(Op op, const Dyadic& a, const Dyadic& b, Prec p) {
  switch (op) {
    case Op::Add: return add(a, b, p);
    case Op::Sub: return sub(a, b, p);
    case Op::Mul: return mul(a, b, p);
    case Op::Div: return div(a, b, p);
  }
  throw DomainError("unknown operation");
}

// ---- complex

ComplexDyadic ComplexDyadic::rotate(long k) const {
  switch (((k % 4) + 4) % 4) {
    case 0: return *this;
    case 1: return times_i();
    case 2: return -*this;
    default: return {im, -re};
  }
}

int64_t mag(const ComplexDyadic& a) {
  if (a.is_zero()) throw DomainError("mag(0) is undefined");
  if (a.re.is_zero()) return mag(a.im);
  if (a.im.is_zero()) return mag(a.re);
  return std::max(mag(a.re), mag(a.im)) + 1;
}

ComplexDyadic round_even(const ComplexDyadic& a, Prec p) { return {round_even(a.re, p), round_even(a.im, p)}; }

ComplexDyadic add(const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  return {add(a.re, b.re, p), add(a.im, b.im, p)};
}
ComplexDyadic sub(const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  return {sub(a.re, b.re, p), sub(a.im, b.im, p)};
}
ComplexDyadic mul(const Dyadic& x, const ComplexDyadic& a, Prec p) { return {mul(x, a.re, p), mul(x, a.im, p)}; }
ComplexDyadic div(const ComplexDyadic& a, const Dyadic& x, Prec p) { return {div(a.re, x, p), div(a.im, x, p)}; }

ComplexDyadic complex_mul_correct(const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  return round_even(a * b, p);
}

ComplexDyadic complex_mul_componentwise(const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  Dyadic rr = mul(a.re, b.re, p), ii = mul(a.im, b.im, p);
  Dyadic ri = mul(a.re, b.im, p), ir = mul(a.im, b.re, p);
  return {sub(rr, ii, p), add(ri, ir, p)};
}

ComplexDyadic complex_arith(Op op, const ComplexDyadic& a, const ComplexDyadic& b, Prec p) {
  switch (op) {
    case Op::Add: return add(a, b, p);
    case Op::Sub: return sub(a, b, p);
    case Op::Mul: return complex_mul_componentwise(a, b, p);
    case Op::Div: {
      if (b.is_zero()) throw DomainError("division by zero");
      ComplexDyadic num = complex_mul_componentwise(a, b.conj(), p);
      Dyadic den = add(mul(b.re, b.re, p), mul(b.im, b.im, p), p);
      return div(num, den, p);
    }
  }
  throw DomainError("unknown operation");
}

Dyadic abs_upper(const ComplexDyadic& a, Prec p) {
  Dyadic s = a.re * a.re + a.im * a.im;
  if (s.is_zero()) return {};
  // sqrt rounded to nearest, then pushed up by one ulp
  Dyadic r = sqrt(round_dir(s, Prec(p.d + 4), Dir::Up), Prec(p.d + 2));
  return round_dir(r + Dyadic::pow2(mag(r) - static_cast<int64_t>(p.d) - 1), p, Dir::Up);
}

// ---- decimal text

std::string to_fixed(const Dyadic& x, int digits) {
  mpq_class q = x.to_mpq();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  q *= scale;
  // round half to even
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  mpq_class frac = q - mpq_class(fl);
  int c = cmp(frac, mpq_class(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
  bool neg = fl < 0;
  std::string s = mpz_class(::abs(fl)).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  return (neg ? "-" : "") + s;
}

mpq_class parse_rational(const std::string& text) {
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError("not a number: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw DomainError("not a number: '" + text + "'");
    std::string ex = text.substr(i + 1);
    size_t used = 0;
    long e = 0;
    try {
      e = std::stol(ex, &used);
    } catch (const std::exception&) {
      throw DomainError("bad exponent in '" + text + "'");
    }
    if (used != ex.size()) throw DomainError("bad exponent in '" + text + "'");
    scale += e;
  }
  mpq_class q{mpz_class(digits, 10)};
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0) {
    q *= p10;
  } else {
    q /= p10;
  }
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

Dyadic parse_decimal(const std::string& s, Prec p, bool* exact) {
  mpq_class q = parse_rational(s);
  try {
    Dyadic d = Dyadic::from_mpq(q);
    if (exact) *exact = true;
    return d;
  } catch (const DomainError&) {
  }
  if (exact) *exact = false;
  // scale so the integer quotient carries p.d+3 bits
  mpz_class num = ::abs(q.get_num()), den = q.get_den();
  int64_t s2 = static_cast<int64_t>(p.d) + 3 + static_cast<int64_t>(bits_of(den)) -
               static_cast<int64_t>(bits_of(num));
  if (s2 < 0) s2 = 0;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(s2));
  mpz_class quo, rem;
  mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return round_quotient(sgn(q), quo, -s2, rem != 0, p);
}

}  // namespace rszeta::mpfp
