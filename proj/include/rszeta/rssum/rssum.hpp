#pragma once
#include <span>
#include <vector>

#include "rszeta/mpfp/approx.hpp"
#include "rszeta/params/plan.hpp"
#include "rszeta/rscoeff/dtable.hpp"

namespace rszeta::rssum {

using mpfp::ComplexApprox;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;

struct CorrectionWorkspace {
  std::vector<Dyadic> av;       // a^-k (1 + eta_2k)
  std::vector<Dyadic> pipower;  // pi^r at wppi
  std::vector<std::vector<ComplexDyadic>> tcoef, tv;
  std::vector<ComplexApprox> term;
  ComplexApprox rssum;
};

enum class InnerOrder { Ascending, Descending };  // descending only for tests

// av[0] = 1, av[1] = 1/trunc_a(t) at wptv[0]+2, the rest at wptv[0]
std::vector<Dyadic> compute_inverse_powers(const params::RSPlan& plan);
std::vector<Dyadic> compute_pipowers(const params::RSPlan& plan);

// tcoef[k][l] = d[k,l] Fp[3k-2l] / pipower[2k-l] / (2i)^l at wptcoef[k], then tv = tcoef av[k]
void compute_tcoef_tv(CorrectionWorkspace& ws, const rscoeff::DTable& d, std::span<const ComplexApprox> Fp,
                      const params::RSPlan& plan);

// term[k] = sum_l tv[k][l] + O*(eps3) at wpterm[k]
std::vector<ComplexApprox> compute_terms(const CorrectionWorkspace& ws, const params::RSPlan& plan,
                                         InnerOrder order = InnerOrder::Ascending);

// term[L-1] + ... + term[0] + O*(eps2/2)
ComplexApprox compute_rssum(std::span<const ComplexApprox> terms, const params::RSPlan& plan);

// term bounds: T_k / a^k, and the bound used for the outer sum
Dyadic term_bound(const params::RSPlan& plan, unsigned k);
Dyadic rsbound(const params::RSPlan& plan);

// whole pipeline; Fp from the coefficient cache unless given
CorrectionWorkspace rs_correction(const params::RSPlan& plan, InnerOrder order = InnerOrder::Ascending);
CorrectionWorkspace rs_correction(const params::RSPlan& plan, std::span<const ComplexApprox> Fp,
                                  InnerOrder order = InnerOrder::Ascending);

}  // namespace rszeta::rssum
