#pragma once
#include <gmpxx.h>

#include <span>
#include <utility>
#include <vector>

#include "rszeta/mpfp/approx.hpp"
#include "rszeta/mpfp/dyadic.hpp"
#include "rszeta/params/plan.hpp"

namespace rszeta::taylorf {

using mpfp::ComplexApprox;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;
using mpfp::RealApprox;

// E_0, E_2, ..., E_upto (upto even), exact.
std::vector<mpz_class> euler_numbers(unsigned upto);

struct VWTables {
  unsigned long wpvw = 0;
  std::vector<RealApprox> v;  // (-1)^k E_2k pi^2k/(2k)!, k < J
  std::vector<RealApprox> w;  // (pi/2)^k/k!, k <= 2J-2
};
// least d with 2^d > 10(J+3) and 2^d >= 2^(4J+4)/eps6; eps6 a power of two
unsigned long vw_precision(unsigned J, const Dyadic& eps6);
VWTables compute_vw(unsigned J, const Dyadic& eps6);

struct PPair {
  ComplexApprox P1, P2;
  unsigned long wpp1 = 0, wpp2 = 0;
};
// both within 2^-2n eps6/6
PPair compute_P1_P2(unsigned n, const VWTables& vw, const Dyadic& eps6);

struct TaylorCoefficients {
  unsigned J = 0;
  Dyadic eps6;  // power of two
  long wpc0 = 0;
  std::vector<ComplexDyadic> c2n;  // n < J

  Dyadic delta(unsigned n) const { return eps6.ldexp(-2 * static_cast<int64_t>(n)); }
  // c[2n] within delta(n); odd entries exactly zero. Length 2J-1.
  std::vector<ComplexApprox> polynomial() const;
};

// c[2n] = mu P1(n) + nu P2(n), n < J
TaylorCoefficients compute_c2n(unsigned J, const Dyadic& eps6);

// Derivatives Pp[m], m < M, of sum c[k] x^k at p with |p| <= 1, at precision d.
// Throws PreconditionError when the coefficient tolerances or d are too coarse for eps_m.
std::vector<ComplexApprox> poly_derivatives(std::span<const ComplexApprox> coeffs, const Dyadic& p, unsigned M,
                                            std::span<const Dyadic> eps_m, unsigned long d);

// Fp[m], m <= 3L-3: derivatives of F at the plan's p, zero from M on.
std::vector<ComplexApprox> compute_Fp(const params::RSPlan& plan, const TaylorCoefficients& coeffs);
// same, using the process-wide coefficient cache
std::vector<ComplexApprox> compute_Fp(const params::RSPlan& plan);

// One derivative evaluation serving several plans at the same t (p differs only
// in how finely it was rounded). Falls back to separate evaluations when the
// combined requirements fail the polynomial-evaluation checks.
std::vector<std::vector<ComplexApprox>> compute_Fp_shared(std::span<const params::RSPlan* const> plans);

}  // namespace rszeta::taylorf
