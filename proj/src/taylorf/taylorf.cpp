#include "rszeta/taylorf/taylorf.hpp"

#include <optional>

#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/taylorf/cache.hpp"

namespace rszeta::taylorf {

using mpfp::Ball;
using mpfp::Bound;
using mpfp::Prec;

namespace {

constexpr mpfr_prec_t kGuard = 64;

// rounded midpoint, with its distance to the ball folded into the tolerance
RealApprox settle(const Ball& b, unsigned long d) {
  Dyadic mid = b.mid_dyadic();
  Dyadic v = mpfp::round_even(mid, Prec(d));
  Dyadic err = (v - mid).abs() + b.rad_dyadic();
  Dyadic pad = v.is_zero() ? Dyadic::pow2(-static_cast<int64_t>(d) - 8)
                           : Dyadic::pow2(mpfp::mag(v) - static_cast<int64_t>(d) - 8);
  return {v, err + pad};
}

std::vector<ComplexApprox> as_complex(std::span<const RealApprox> x) {
  std::vector<ComplexApprox> r;
  for (const auto& e : x) r.push_back({ComplexDyadic(e.value), e.eps});
  return r;
}

Dyadic conv_eps(unsigned n, const Dyadic& eps6) {
  return (Bound(eps6.ldexp(-2 * static_cast<int64_t>(n))) / Bound(6)).lower();
}

// correctly rounded sqrt(2)/2 and exp(3 pi i/8)/2
std::pair<Dyadic, ComplexDyadic> mu_nu(unsigned long d) {
  for (mpfr_prec_t q = static_cast<mpfr_prec_t>(d) + kGuard;; q *= 2) {
    Ball two = Ball::exact(Dyadic(2), q);
    Ball r2 = sqrt(two);
    Ball mu = r2.ldexp(-1);
    Ball nre = sqrt(two - r2).ldexp(-2), nim = sqrt(two + r2).ldexp(-2);
    auto m = mu.round_if_determined(Prec(d));
    auto a = nre.round_if_determined(Prec(d));
    auto b = nim.round_if_determined(Prec(d));
    if (m && a && b) return {*m, ComplexDyadic(*a, *b)};
  }
}

}  // namespace

std::vector<mpz_class> euler_numbers(unsigned upto) {
  unsigned n = upto / 2;
  std::vector<mpz_class> E(n + 1);
  E[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    // sum_j C(2i, 2j) E_2j = 0
    mpz_class s = 0, c;
    for (unsigned j = 0; j < i; ++j) {
      mpz_bin_uiui(c.get_mpz_t(), 2 * i, 2 * j);
      s += c * E[j];
    }
    E[i] = -s;
  }
  return E;
}

unsigned long vw_precision(unsigned J, const Dyadic& eps6) {
  if (eps6.sign() <= 0 || eps6.mantissa() != 1) throw PreconditionError("eps6 must be a power of two");
  int64_t d1 = Bound(10 * (J + 3)).mag_upper();
  int64_t d2 = 4 * static_cast<int64_t>(J) + 4 - eps6.exponent();
  return static_cast<unsigned long>(std::max<int64_t>({d1, d2, 1}));
}

VWTables compute_vw(unsigned J, const Dyadic& eps6) {
  if (J == 0) throw PreconditionError("compute_vw: J must be positive");
  VWTables t;
  t.wpvw = vw_precision(J, eps6);
  const unsigned long d = t.wpvw + 2;
  const auto q = static_cast<mpfr_prec_t>(d) + kGuard;
  auto E = euler_numbers(2 * (J - 1));
  Ball pi = Ball::pi(q);
  Ball pi2 = pi * pi;
  Ball pw = Ball::exact(Dyadic(1), q);
  mpz_class fac = 1;
  for (unsigned k = 0; k < J; ++k) {
    if (k > 0) fac *= (2 * k - 1) * (2 * k);
    mpz_class e = k % 2 ? mpz_class(-E[k]) : E[k];
    t.v.push_back(settle(Ball::exact(Dyadic(e), q) * pw / Ball::exact(Dyadic(fac), q), d));
    pw = pw * pi2;
  }
  Ball half_pi = pi.ldexp(-1);
  pw = Ball::exact(Dyadic(1), q);
  fac = 1;
  for (unsigned k = 0; k + 1 < 2 * J; ++k) {
    if (k > 0) fac *= k;
    t.w.push_back(settle(pw / Ball::exact(Dyadic(fac), q), d));
    pw = pw * half_pi;
  }
  return t;
}

PPair compute_P1_P2(unsigned n, const VWTables& vw, const Dyadic& eps6) {
  if (vw.v.size() <= n || vw.w.size() <= 2 * n) throw PreconditionError("compute_P1_P2: tables too short");
  const Dyadic ce = conv_eps(n, eps6);
  const auto A = params::euler_term_bounds(n);
  PPair out;

  std::vector<RealApprox> v1, w1;
  for (unsigned k = 0; k <= n; ++k) {
    v1.push_back(k % 2 ? RealApprox{-vw.v[k].value, vw.v[k].eps} : vw.v[k]);
    w1.push_back(vw.w[2 * k]);
  }
  auto B1 = params::p1_w_bounds(n);
  RealApprox s = mpfp::convolution<Dyadic>(v1, w1, n, A, B1, ce, &out.wpp1);
  Dyadic im = n % 2 ? s.value : -s.value;  // (-1)^(n+1)
  out.P1 = {ComplexDyadic(Dyadic(0), im), ce};

  auto v2 = as_complex(std::span<const RealApprox>(vw.v).first(n + 1));
  std::vector<ComplexApprox> w2;
  for (unsigned j = 0; j <= n; ++j) w2.push_back({ComplexDyadic(vw.w[j].value).rotate(j), vw.w[j].eps});
  auto B2 = params::p2_w_bounds(n);
  out.P2 = mpfp::convolution<ComplexDyadic>(v2, w2, n, A, B2, ce, &out.wpp2);
  return out;
}

TaylorCoefficients compute_c2n(unsigned J, const Dyadic& eps6) {
  TaylorCoefficients tc;
  tc.J = J;
  tc.eps6 = eps6;
  tc.wpc0 = 4 - eps6.exponent();  // 5 - mag(eps6)
  VWTables vw = compute_vw(J, eps6);
  const long outer = std::max<long>(6, 4 * static_cast<long>(J) + tc.wpc0);
  auto [mu, nu] = mu_nu(static_cast<unsigned long>(outer) + 4);
  for (unsigned n = 0; n < J; ++n) {
    PPair pp = compute_P1_P2(n, vw, eps6);
    Prec q(static_cast<unsigned long>(std::max<long>(6, 4 * static_cast<long>(n) + tc.wpc0)));
    ComplexDyadic a = mpfp::mul(mu, pp.P1.value, q);
    ComplexDyadic b = mpfp::mul(nu, pp.P2.value, q);
    tc.c2n.push_back(mpfp::add(a, b, q));
  }
  return tc;
}

std::vector<ComplexApprox> TaylorCoefficients::polynomial() const {
  std::vector<ComplexApprox> r;
  for (unsigned n = 0; n < J; ++n) {
    if (n > 0) r.push_back({ComplexDyadic(), Dyadic(0)});
    r.push_back({c2n[n], delta(n)});
  }
  return r;
}

std::vector<ComplexApprox> poly_derivatives(std::span<const ComplexApprox> coeffs, const Dyadic& p, unsigned M,
                                            std::span<const Dyadic> eps_m, unsigned long d) {
  const std::size_t J = coeffs.size();
  if (Dyadic(1) < p.abs()) throw PreconditionError("poly_derivatives: |p| > 1");
  if (M > J) throw PreconditionError("poly_derivatives: M exceeds the number of coefficients");
  if (eps_m.size() < M) throw PreconditionError("poly_derivatives: tolerance schedule too short");
  if (!Bound(static_cast<long>(22 * J)).certainly_lt(Bound(Dyadic::pow2(static_cast<int64_t>(d)))))
    throw PreconditionError("poly_derivatives: 2^d <= 22 J");
  Bound two_d(Dyadic::pow2(static_cast<int64_t>(d)));
  for (unsigned m = 0; m < M; ++m) {
    Bound dsum(0), H(0);
    for (std::size_t k = m; k < J; ++k) {
      Bound w(Dyadic::pow2(static_cast<int64_t>(k)));
      dsum += w * Bound(coeffs[k].eps);
      H += w * (Bound(mpfp::abs_upper(coeffs[k].value, Prec(30))) + Bound(coeffs[k].eps));
    }
    Bound mf = mpfp::factorial(m);
    if (!dsum.certainly_lt(Bound(eps_m[m]) / (Bound(3) * mf)))
      throw PreconditionError("poly_derivatives: coefficient tolerances too coarse at m = " + std::to_string(m));
    Bound need = Bound::rational(636, 100) * Bound(static_cast<long>(J)) * mf * H / Bound(eps_m[m]);
    if (!need.certainly_lt(two_d))
      throw PreconditionError("poly_derivatives: precision too low at m = " + std::to_string(m));
  }

  Prec P(d);
  std::vector<ComplexDyadic> c;
  for (const auto& x : coeffs) c.push_back(x.value);
  std::vector<ComplexApprox> out;
  for (unsigned m = 0; m < M; ++m) {
    ComplexDyadic sum;
    for (std::size_t k = J - m; k-- > 0;) sum = mpfp::add(mpfp::mul(p, sum, P), c[k], P);
    out.push_back({sum, eps_m[m]});
    for (std::size_t k = 0; k + m + 1 < J; ++k) c[k] = mpfp::mul(Dyadic(static_cast<long>(k + 1)), c[k + 1], P);
  }
  return out;
}

std::vector<ComplexApprox> compute_Fp(const params::RSPlan& plan, const TaylorCoefficients& coeffs) {
  const auto& tc = plan.counts;
  const auto& e = plan.eps;
  if (!(Bound(3 * tc.L)).certainly_lt(Bound(2) * plan.geom.a * plan.geom.a / Bound(25)))
    throw PreconditionError("compute_Fp: 3L < 2a^2/25 fails");
  if (coeffs.J < tc.J || e.eps6 < coeffs.eps6) throw PreconditionError("compute_Fp: coefficients too coarse");
  auto poly = coeffs.polynomial();
  poly.resize(2 * tc.J - 1);
  std::vector<Dyadic> eps_m;
  for (unsigned m = 0; m < tc.M; ++m) eps_m.push_back(e.eps5[m].ldexp(-1));
  auto Pp = poly_derivatives(poly, plan.geom.p.value, tc.M, eps_m, plan.wp.wpfp);
  std::vector<ComplexApprox> Fp;
  for (unsigned m = 0; m <= 3 * tc.L - 3; ++m) {
    if (m < tc.M) {
      if (e.eps5_tilde[m] < Pp[m].eps) throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification,
                                                                  "compute_Fp: eps5/2 above 4 F_m");
      Fp.push_back({Pp[m].value, e.eps5_tilde[m]});
    }
    else
      Fp.push_back({ComplexDyadic(), e.eps5_tilde[m]});
  }
  return Fp;
}

std::vector<std::vector<ComplexApprox>> compute_Fp_shared(std::span<const params::RSPlan* const> plans) {
  std::vector<std::vector<ComplexApprox>> out;
  if (plans.empty()) return out;
  const params::RSPlan* fine = plans[0];
  unsigned J = 0, M = 0;
  unsigned long d = 0;
  Dyadic e6 = plans[0]->eps.eps6;
  for (const auto* pl : plans) {
    if (pl->req.t != plans[0]->req.t) throw PreconditionError("compute_Fp_shared: plans at different t");
    if (pl->geom.p_bits > fine->geom.p_bits) fine = pl;
    J = std::max(J, pl->counts.J);
    M = std::max(M, pl->counts.M);
    d = std::max(d, pl->wp.wpfp);
    e6 = std::min(e6, pl->eps.eps6);
  }
  TaylorCoefficients tc = CoefficientCache::global().get(J, e6);
  std::vector<Dyadic> eps_m;
  for (unsigned m = 0; m < M; ++m) {
    std::optional<Dyadic> e;
    for (const auto* pl : plans)
      if (m < pl->counts.M && (!e || pl->eps.eps5[m] < *e)) e = pl->eps.eps5[m];
    eps_m.push_back(e->ldexp(-1));
  }
  std::vector<ComplexApprox> Pp;
  try {
    auto poly = tc.polynomial();
    poly.resize(2 * J - 1);
    Pp = poly_derivatives(poly, fine->geom.p.value, M, eps_m, d);
  } catch (const PreconditionError&) {
    for (const auto* pl : plans) out.push_back(compute_Fp(*pl, tc));
    return out;
  }
  for (const auto* pl : plans) {
    const auto& c = pl->counts;
    const auto& e = pl->eps;
    if (!(Bound(3 * c.L)).certainly_lt(Bound(2) * pl->geom.a * pl->geom.a / Bound(25)))
      throw PreconditionError("compute_Fp: 3L < 2a^2/25 fails");
    std::vector<ComplexApprox> Fp;
    for (unsigned m = 0; m <= 3 * c.L - 3; ++m) {
      if (m < c.M) {
        if (e.eps5_tilde[m] < Pp[m].eps)
          throw PrecisionUnattainable(PrecisionUnattainable::Reason::Certification, "compute_Fp: eps5/2 above 4 F_m");
        Fp.push_back({Pp[m].value, e.eps5_tilde[m]});
      } else {
        Fp.push_back({ComplexDyadic(), e.eps5_tilde[m]});
      }
    }
    out.push_back(std::move(Fp));
  }
  return out;
}

std::vector<ComplexApprox> compute_Fp(const params::RSPlan& plan) {
  return compute_Fp(plan, CoefficientCache::global().get(plan.counts.J, plan.eps.eps6));
}

}  // namespace rszeta::taylorf
