#pragma once
#include <cstdint>
#include <memory>
#include <vector>

#include "rszeta/mpfp/approx.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/dyadic.hpp"
#include "rszeta/params/constants.hpp"

namespace rszeta::params {

using mpfp::RealApprox;

struct RSRequest {
  Dyadic sigma;
  Dyadic t;
  Dyadic eps;
};

struct RSGeometry {
  Dyadic t, sigma;
  Bound a;          // outward enclosure of sqrt(t/2pi)
  Dyadic a_mid;     // midpoint of the enclosure used to certify N
  long N = 0;
  RealApprox p;     // 1 - 2(a - N), rounded to p_bits fractional bits, clamped to [-1, 1]
  unsigned long p_bits = 0;
  Bound a_sigma;    // a^sigma
  Dyadic A1;        // 2^(mag(a^sigma)-1) <= a^sigma
};

// p is rounded to `guard_bits` bits after the binary point. Throws
// PrecisionUnattainable(Certification) when floor(a) cannot be decided.
RSGeometry derive_geometry(const RSRequest& req, unsigned long guard_bits);

struct EpsilonCascade {
  Dyadic eps, eps1, eps2, eps3, eps4;
  std::vector<Dyadic> eps5;        // m = 0 .. 3L-3
  std::vector<Dyadic> eps5_tilde;  // min(4 F_m, eps5(m))
  Dyadic eps6;                     // power of two
  std::vector<Dyadic> delta;       // eps4 a^k / 4, k < L
};

struct TermCounts {
  unsigned L = 0, K = 0, J = 0, M = 0;
};

struct PrecisionPlan {
  unsigned long wprssum = 0;
  std::vector<unsigned long> wpterm, wptcoef, wptv;  // k < L
  unsigned long wppi = 0;
  std::vector<unsigned long> wpd;                    // n < L
  unsigned long wpfp = 0;
  unsigned long wpp = 0;                             // fractional bits of p
  unsigned long wpsum = 0;
  unsigned long wpvw = 0;
  long wpc0 = 0;
  unsigned long wpc_outer = 0;
  std::vector<unsigned long> wpc, wpp1, wpp2;        // n < J
};

struct RSPlan {
  RSRequest req;
  Constants consts;
  RSGeometry geom;
  EpsilonCascade eps;
  TermCounts counts;
  PrecisionPlan wp;

  // (sqrt(2pi)/128)(pi a^2/8)^(k/2) 2^(2l) eps4 / Gamma((3k-2l+1)/2), lower bound
  Dyadic gamma(unsigned k, unsigned l) const;
};

using PlanPtr = std::shared_ptr<const RSPlan>;

// L from the main, secondary and third conditions. Fills L and K.
TermCounts choose_L(const RSGeometry& geom, const Constants& consts, const Dyadic& eps2);
// M and J for a fixed L.
void choose_M_and_J(const RSGeometry& geom, const Constants& consts, TermCounts& counts, EpsilonCascade& eps);
EpsilonCascade build_cascade(const RSGeometry& geom, const Constants& consts, const Dyadic& eps, unsigned L);
PrecisionPlan build_precision_plan(const RSGeometry& geom, const Constants& consts, const TermCounts& counts,
                                   const EpsilonCascade& eps);

// Whole pipeline. Throws PrecisionUnattainable or PreconditionError.
PlanPtr make_plan(const RSRequest& req, const ConstantsTable& table = ConstantsTable::instance());

// least d with 2^d > 16|s|(N + N^(1-sigma)) log N / eps1 (at least 6)
unsigned long sum_precision(const Dyadic& sigma, const Dyadic& t, long N, const Dyadic& eps1);
// least d with 2^d > 2^6 (1 + 2/(eps8 a^sigma)) (t/2) log(t/2pi)
unsigned long s3_precision(const Dyadic& t, const Bound& a_sigma, const Dyadic& eps8);

// bound sequences of the convolutions giving c_2n
std::vector<Dyadic> euler_term_bounds(std::size_t n);   // (4/pi) 4^k
std::vector<Dyadic> p1_w_bounds(std::size_t n);         // (pi/2)^(2j)/(2j)!
std::vector<Dyadic> p2_w_bounds(std::size_t n);         // (pi/2)^j/j!

// mag of an upper bound: least d with 2^d > x
inline unsigned long mag_of(const Bound& x) {
  int64_t m = x.mag_upper();
  return m < 1 ? 1UL : static_cast<unsigned long>(m);
}

}  // namespace rszeta::params
