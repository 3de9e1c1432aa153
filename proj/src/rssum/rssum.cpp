#include "rszeta/rssum/rssum.hpp"

#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/elementary.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/taylorf/taylorf.hpp"

namespace rszeta::rssum {

using mpfp::Bound;
using mpfp::Prec;

std::vector<Dyadic> compute_inverse_powers(const params::RSPlan& plan) {
  const unsigned L = plan.counts.L;
  const unsigned long d0 = plan.wp.wptv.at(0);
  std::vector<Dyadic> av{Dyadic(1)};
  if (L < 2) return av;
  Prec hi(d0 + 2), lo(d0);
  Dyadic a = mpfp::trunc_a(plan.req.t, hi);
  av.push_back(mpfp::div(Dyadic(1), a, hi));
  for (unsigned k = 2; k < L; ++k) av.push_back(mpfp::mul(av[k - 1], av[1], lo));
  return av;
}

std::vector<Dyadic> compute_pipowers(const params::RSPlan& plan) {
  const unsigned L = plan.counts.L;
  Prec P(plan.wp.wppi);
  std::vector<Dyadic> pw{Dyadic(1)};
  if (L < 2) return pw;
  Dyadic pi = mpfp::pi(P);
  pw.push_back(pi);
  for (unsigned r = 2; r <= 2 * (L - 1); ++r) pw.push_back(mpfp::mul(pw[r - 1], pi, P));
  return pw;
}

void compute_tcoef_tv(CorrectionWorkspace& ws, const rscoeff::DTable& d, std::span<const ComplexApprox> Fp,
                      const params::RSPlan& plan) {
  const unsigned L = plan.counts.L;
  if (d.rows() < L) throw PreconditionError("compute_tcoef_tv: d-table has fewer than L rows");
  if (Fp.size() < 3 * L - 2) throw PreconditionError("compute_tcoef_tv: derivative set too short");
  if (ws.av.size() < L) ws.av = compute_inverse_powers(plan);
  if (ws.pipower.size() < 2 * L - 1) ws.pipower = compute_pipowers(plan);
  ws.tcoef.assign(L, {});
  ws.tv.assign(L, {});
  for (unsigned k = 0; k < L; ++k) {
    Prec P(plan.wp.wptcoef[k]);
    Prec Q(plan.wp.wptv[k]);
    for (unsigned l = 0; l < rscoeff::DTable::row_length(k); ++l) {
      ComplexDyadic x = mpfp::mul(d.value(k, l), Fp[3 * k - 2 * l].value, P);
      x = mpfp::div(x, ws.pipower[2 * k - l], P);
      // 1/(2i)^l = (-i)^l 2^-l, exact
      x = x.rotate(-static_cast<long>(l)).ldexp(-static_cast<int64_t>(l));
      ws.tcoef[k].push_back(x);
      ws.tv[k].push_back(mpfp::mul(ws.av[k], x, Q));
    }
  }
}

Dyadic term_bound(const params::RSPlan& plan, unsigned k) {
  Bound b = plan.consts.T(k) / pow(plan.geom.a, static_cast<long>(k));
  return b.upper();
}

Dyadic rsbound(const params::RSPlan& plan) {
  const auto& c = plan.consts;
  Bound r = Bound(c.c) * sqrt(Bound::pi()) / (Bound(c.b) * plan.geom.a);
  // term[0] = F(p) is not covered by c sqrt(pi)/(b a)
  return max(r, plan.consts.T(0)).upper();
}

std::vector<ComplexApprox> compute_terms(const CorrectionWorkspace& ws, const params::RSPlan& plan,
                                         InnerOrder order) {
  const unsigned L = plan.counts.L;
  const Dyadic& eps4 = plan.eps.eps4;
  std::vector<ComplexApprox> out;
  for (unsigned k = 0; k < L; ++k) {
    const auto& row = ws.tv.at(k);
    const std::size_t n = row.size();
    mpfp::TermProducer<ComplexDyadic> f = [&](std::size_t i, const Dyadic&) {
      std::size_t l = order == InnerOrder::Ascending ? i : n - 1 - i;
      return ComplexApprox{row[l], eps4};
    };
    out.push_back(mpfp::sum_with_error<ComplexDyadic>(n, f, term_bound(plan, k), plan.eps.eps3,
                                                      plan.wp.wpterm[k]));
  }
  return out;
}

ComplexApprox compute_rssum(std::span<const ComplexApprox> terms, const params::RSPlan& plan) {
  const unsigned L = plan.counts.L;
  if (terms.size() != L) throw PreconditionError("compute_rssum: expected L terms");
  if (L == 1) return {terms[0].value, terms[0].eps};
  mpfp::TermProducer<ComplexDyadic> f = [&](std::size_t i, const Dyadic&) { return terms[L - 1 - i]; };
  return mpfp::sum_with_error<ComplexDyadic>(L, f, rsbound(plan), plan.eps.eps2.ldexp(-1), plan.wp.wprssum);
}

CorrectionWorkspace rs_correction(const params::RSPlan& plan, std::span<const ComplexApprox> Fp,
                                  InnerOrder order) {
  CorrectionWorkspace ws;
  rscoeff::DTable d = rscoeff::compute_d(plan);
  compute_tcoef_tv(ws, d, Fp, plan);
  ws.term = compute_terms(ws, plan, order);
  ws.rssum = compute_rssum(ws.term, plan);
  return ws;
}

CorrectionWorkspace rs_correction(const params::RSPlan& plan, InnerOrder order) {
  auto Fp = taylorf::compute_Fp(plan);
  return rs_correction(plan, Fp, order);
}

}  // namespace rszeta::rssum
