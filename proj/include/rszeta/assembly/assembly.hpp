#pragma once
#include <span>
#include <string>
#include <vector>

#include "rszeta/mpfp/approx.hpp"
#include "rszeta/params/plan.hpp"

namespace rszeta::assembly {

using mpfp::ComplexApprox;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;
using mpfp::RealApprox;

// one O*() allocation
struct BudgetEntry {
  std::string stage;
  Dyadic eps;
};

struct RzetaResult {
  ComplexApprox value;
  params::PlanPtr plan;
  ComplexApprox S1, S2, S3;
  Dyadic A2, eps8;
  unsigned long d = 0;  // precision of the final combination
  std::vector<BudgetEntry> ledger;
};

// (-1)^(N-1) U a^-sigma + O*(eps8), U = exp(-i((t/2) log(t/2pi) - t/2 - pi/8))
ComplexApprox compute_S3(const params::RSPlan& plan, const Dyadic& eps8);

// R(s) + O*(eps)
RzetaResult rzeta_detail(const ComplexDyadic& s, const Dyadic& eps);
ComplexApprox rzeta(const ComplexDyadic& s, const Dyadic& eps);
// R at sigma+it and 1-sigma+it sharing the sum logarithms and F derivatives
std::pair<RzetaResult, RzetaResult> rzeta_pair(const ComplexDyadic& s, const Dyadic& eps1, const Dyadic& eps2);

struct Evaluation {
  ComplexApprox value;
  std::vector<params::PlanPtr> plans;
  std::vector<BudgetEntry> ledger;
  unsigned long wptheta = 0, wpR = 0, wpbasic = 0;
  unsigned retries = 0;  // precision bumps after the runtime error check
};

// Z(t) for real t > 16 pi
Evaluation z_real_detail(const Dyadic& t, const Dyadic& eps);
RealApprox z_real(const Dyadic& t, const Dyadic& eps);

// zeta(s) for |t| > 16 pi, through R(s) and R(1-sigma+it)
Evaluation zeta_full_detail(const ComplexDyadic& s, const Dyadic& eps);
ComplexApprox zeta_full(const ComplexDyadic& s, const Dyadic& eps);

// Z(w), Re w > 16 pi
Evaluation z_complex_detail(const ComplexDyadic& w, const Dyadic& eps);
ComplexApprox z_complex(const ComplexDyadic& w, const Dyadic& eps);

// 1 - mag(eps): 2^-d0 <= eps
int64_t d0_of(const Dyadic& eps);

}  // namespace rszeta::assembly
