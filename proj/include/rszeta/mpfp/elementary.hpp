#pragma once
#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::mpfp {

// Correctly rounded (to nearest, ties to even) elementary functions.
// Each result is round_even(f(x), p), so |result - f(x)| <= 2^-d |f(x)|.
Dyadic pi(Prec p);
Dyadic exp(const Dyadic& x, Prec p);
Dyadic log(const Dyadic& x, Prec p);  // x > 0
Dyadic sin(const Dyadic& x, Prec p);
Dyadic cos(const Dyadic& x, Prec p);
Dyadic pow(const Dyadic& x, const Dyadic& y, Prec p);  // x > 0
Dyadic atan2(const Dyadic& y, const Dyadic& x, Prec p);

// exp(z) rounded componentwise to nearest; enclosures are widened until the
// rounding is decided.
ComplexDyadic exp(const ComplexDyadic& z, Prec p);

// a = sqrt(t/(2 pi)) with relative error below 2^-d, computed at d+2 bits.
Dyadic trunc_a(const Dyadic& t, Prec p);

}  // namespace rszeta::mpfp
