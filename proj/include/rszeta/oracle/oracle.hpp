#pragma once
#include "rszeta/mpfp/approx.hpp"
#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/dyadic.hpp"

// Reference values by Euler-Maclaurin summation in ball arithmetic. Slow for
// large |t| but shares nothing with the Riemann-Siegel path except the
// elementary functions.
namespace rszeta::oracle {

using mpfp::CBall;
using mpfp::ComplexApprox;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;
using mpfp::RealApprox;

struct EMParams {
  unsigned long N = 0;  // terms summed directly
  unsigned long M = 0;  // Bernoulli correction terms
  mpfr_prec_t prec = 0;
};

// enclosure of zeta(s) with the truncation error folded into the radius
CBall em_zeta_ball(const ComplexDyadic& s, mpfr_prec_t prec, EMParams* used = nullptr);

// zeta(s) within eps. DomainError at s = 1.
ComplexApprox em_zeta(const ComplexDyadic& s, const Dyadic& eps, EMParams* used = nullptr);

// Z(t) = Re(exp(i theta(t)) zeta(1/2 + it)) within eps
RealApprox em_Z(const Dyadic& t, const Dyadic& eps);
// Z(w) = exp(i theta(w)) zeta(1/2 + iw) within eps
ComplexApprox em_Z_complex(const ComplexDyadic& w, const Dyadic& eps);

}  // namespace rszeta::oracle
