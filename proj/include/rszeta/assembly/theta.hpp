#pragma once
#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::assembly {

using mpfp::CBall;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;

struct ThetaValue {
  ComplexDyadic value;
  ComplexDyadic arg;
  unsigned long d = 0;  // |value - theta(arg)| <= 2^-d
};

// principal log Gamma; w must not lie on the closed negative real axis
CBall loggamma(const CBall& w);

// theta(z) = -i (logG(1/4 + iz/2) - logG(1/4 - iz/2))/2 - (z/2) log pi, as a ball
CBall theta_ball(const ComplexDyadic& z, mpfr_prec_t prec);

// |value - theta(z)| <= 2^-d, widening the working precision as needed
ThetaValue theta(const ComplexDyadic& z, unsigned long d);

// x rounded to a multiple of 2^-(frac_bits), half-even
Dyadic round_abs(const Dyadic& x, int64_t frac_bits);

}  // namespace rszeta::assembly
