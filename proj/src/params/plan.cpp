#include "rszeta/params/plan.hpp"

#include <algorithm>
#include <sstream>

#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/errors.hpp"

namespace rszeta::params {

using mpfp::Ball;
using mpfp::Prec;
using Reason = PrecisionUnattainable::Reason;

namespace {

constexpr unsigned long kGeometryCapBits = 1UL << 20;

Bound twopi() { return Bound(2) * Bound::pi(); }

Bound gamma_fn(const Bound& x) { return gamma(x); }

std::string fmt(const Dyadic& x) {
  std::ostringstream os;
  os << x.to_double();
  return os.str();
}

unsigned long at_least(unsigned long a, unsigned long b) { return std::max(a, b); }

Bound eps5_bound(const RSGeometry& g, const Constants& c, const Dyadic& eps4, unsigned m) {
  Bound pi = Bound::pi();
  Bound base = pi * pi * Bound(c.B1) * g.a;
  Bound r = pow(base, Bound::rational(m, 3)) / (Bound(316) * Bound(c.A));
  r = r * sqrt(mpfp::factorial(m) / gamma(Bound::rational(m + 6, 3)));
  return r * Bound(eps4);
}

}  // namespace

RSGeometry derive_geometry(const RSRequest& req, unsigned long guard_bits) {
  if (req.t.sign() <= 0) throw PreconditionError("t must be positive");
  RSGeometry g;
  g.t = req.t;
  g.sigma = req.sigma;
  g.p_bits = guard_bits;
  unsigned long prec = guard_bits + static_cast<unsigned long>(std::max<int64_t>(0, mag(req.t))) + 20;
  for (;; prec *= 2) {
    if (prec > kGeometryCapBits)
      throw PrecisionUnattainable(Reason::Certification, "cannot decide floor(sqrt(t/2pi)) for t = " + fmt(req.t));
    auto bp = static_cast<mpfr_prec_t>(prec);
    Ball a = sqrt(Ball::exact(req.t, bp) / Ball::pi(bp).ldexp(1));
    mpz_class lo = a.lower().floor(), hi = a.upper().floor();
    if (lo != hi) continue;
    Ball p = Ball::exact(Dyadic(mpz_class(2 * lo + 1)), bp) - a.ldexp(1);
    // p rounded to the grid 2^-guard_bits
    Dyadic mid = p.mid_dyadic();
    int64_t gb = static_cast<int64_t>(guard_bits);
    mpz_class q = (mid.ldexp(gb) + Dyadic::pow2(-1)).floor();
    Dyadic pr = Dyadic::from_parts(q, -gb);
    Dyadic err = (pr - mid).abs() + p.rad_dyadic();
    Dyadic tol = Dyadic::pow2(-gb);
    if (!(err < tol)) continue;
    if (Dyadic(1) < pr) pr = Dyadic(1);
    if (pr < Dyadic(-1)) pr = Dyadic(-1);
    g.N = lo.get_si();
    g.a_mid = a.mid_dyadic();
    g.a = Bound::between(a.lower(), a.upper());
    g.p = {pr, tol};
    break;
  }
  g.a_sigma = pow(g.a, Bound(req.sigma));
  g.A1 = Dyadic::pow2(g.a_sigma.mag_lower() - 1);
  return g;
}

TermCounts choose_L(const RSGeometry& geom, const Constants& c, const Dyadic& eps2) {
  Bound a2 = geom.a * geom.a;
  Bound ba = Bound(c.b) * geom.a;
  Bound sigma(geom.sigma);
  bool structural_ok = false;
  for (unsigned L = 1;; ++L) {
    // 3L+4 < 8a^2/25 and 3L < 2a^2/25
    if (!Bound(3 * L + 4).certainly_lt(Bound(8) * a2 / Bound(25))) break;
    if (!Bound(3 * L).certainly_lt(Bound(2) * a2 / Bound(25))) break;
    if ((Bound(3 * L + 2) + sigma).lower().sign() < 0) continue;
    structural_ok = true;
    Bound lhs = Bound(3) * Bound(c.c) * gamma(Bound::rational(L, 2)) / pow(ba, static_cast<long>(L));
    if (!lhs.certainly_lt(Bound(eps2))) continue;
    TermCounts tc;
    tc.L = L;
    tc.K = 3 * L + 4;
    // ratio Gamma((k+1)/2)/(ba Gamma(k/2)) stays below 1/5 on [L, K]
    for (unsigned k = L; k <= tc.K; ++k) {
      Bound q = gamma(Bound::rational(k + 1, 2)) / (ba * gamma(Bound::rational(k, 2)));
      if (!q.certainly_le(Bound::rational(1, 5)))
        throw PrecisionUnattainable(Reason::Certification, "quotient decay fails at k = " + std::to_string(k));
    }
    return tc;
  }
  if (!structural_ok)
    throw PrecisionUnattainable(Reason::Structural,
                                "no L satisfies the side conditions at t = " + fmt(geom.t) + " (t too small)");
  throw PrecisionUnattainable(Reason::MainCondition,
                              "no admissible L reaches the requested accuracy at t = " + fmt(geom.t));
}

EpsilonCascade build_cascade(const RSGeometry& geom, const Constants& c, const Dyadic& eps, unsigned L) {
  EpsilonCascade e;
  e.eps = eps;
  e.eps1 = (Bound(eps) / Bound(6)).lower();
  e.eps2 = (Bound(geom.A1 * eps) / Bound(3)).lower();
  e.eps3 = (Bound(e.eps2) / Bound(4 * L)).lower();
  e.eps4 = (Bound(e.eps3) / Bound(3 * L)).lower();
  for (unsigned m = 0; m <= 3 * L - 3; ++m) {
    Dyadic v = eps5_bound(geom, c, e.eps4, m).lower();
    e.eps5.push_back(v);
    e.eps5_tilde.push_back(std::min(v, (Bound(4) * Constants::F(m)).lower()));
  }
  for (unsigned k = 0; k < L; ++k)
    e.delta.push_back((Bound(e.eps4) * pow(geom.a, static_cast<long>(k)) / Bound(4)).lower());
  for (const auto& v : e.eps5)
    if (v.sign() <= 0) throw PrecisionUnattainable(Reason::Certification, "eps5 underflow");
  if (e.eps4.sign() <= 0) throw PrecisionUnattainable(Reason::Certification, "eps4 underflow");
  return e;
}

void choose_M_and_J(const RSGeometry& geom, const Constants& c, TermCounts& tc, EpsilonCascade& e) {
  const unsigned top = 3 * tc.L - 3;
  // M: least m with F_m' < eps5(m') for every m' in [m, 3L-3]
  unsigned M = top + 1;
  for (unsigned m = top + 1; m-- > 0;) {
    if (!Constants::F(m).certainly_lt(Bound(e.eps5[m]))) break;
    M = m;
  }
  tc.M = M;

  Bound h1 = Bound(e.eps4) / (Bound(632) * Bound(c.A));
  Bound h2 = h1;
  if (M >= 1) {
    Bound pi = Bound::pi();
    Bound e2 = exp(Bound(2));
    Bound base = pi * pi * Bound(c.B1) * geom.a * sqrt(Bound(3)) * e2 / Bound(static_cast<long>(M) * M);
    h2 = h1 * pow(base, Bound::rational(static_cast<long>(M) - 1, 3)) / Bound(M);
  }
  std::vector<Bound> h3;
  for (unsigned m = 0; m < M; ++m) h3.push_back(Bound(e.eps5[m]) / (Bound(2) * mpfp::factorial(m)));

  Bound jv = Bound(1);
  for (unsigned j = 1; j <= 12; ++j) jv = jv * twopi() / Bound(j);
  unsigned J = 12;
  for (;; ++J) {
    bool ok = jv.certainly_le(h1) && jv.certainly_le(h2);
    for (const auto& h : h3) ok = ok && jv.certainly_le(h);
    if (ok) break;
    jv = jv * twopi() / Bound(J + 1);
    if (J > 1000000) throw PrecisionUnattainable(Reason::Certification, "J search diverged");
  }
  tc.J = J;
  Bound e6 = jv / Bound(3 * J);
  e.eps6 = Dyadic::pow2(e6.mag_lower() - 1);
}

Dyadic RSPlan::gamma(unsigned k, unsigned l) const {
  if (2 * l > 3 * k) throw PreconditionError("gamma(k,l) needs 2l <= 3k");
  Bound pi = Bound::pi();
  Bound r = sqrt(twopi()) / Bound(128);
  r = r * pow(pi * geom.a * geom.a / Bound(8), Bound::rational(k, 2));
  r = r * Bound(Dyadic::pow2(2 * l)) * Bound(eps.eps4);
  r = r / gamma_fn(Bound::rational(3 * k - 2 * l + 1, 2));
  return r.lower();
}

std::vector<Dyadic> euler_term_bounds(std::size_t n) {
  std::vector<Dyadic> r;
  Bound base = Bound(4) / Bound::pi();
  for (std::size_t k = 0; k <= n; ++k) r.push_back((base * Bound(Dyadic::pow2(2 * k))).upper());
  return r;
}

std::vector<Dyadic> p1_w_bounds(std::size_t n) {
  std::vector<Dyadic> r;
  Bound h = Bound::pi() / Bound(2);
  for (std::size_t j = 0; j <= n; ++j)
    r.push_back((pow(h, static_cast<long>(2 * j)) / mpfp::factorial(2 * j)).upper());
  return r;
}

std::vector<Dyadic> p2_w_bounds(std::size_t n) {
  std::vector<Dyadic> r;
  Bound h = Bound::pi() / Bound(2);
  for (std::size_t j = 0; j <= n; ++j) r.push_back((pow(h, static_cast<long>(j)) / mpfp::factorial(j)).upper());
  return r;
}

unsigned long sum_precision(const Dyadic& sigma, const Dyadic& t, long N, const Dyadic& eps1) {
  if (N <= 1) return 6;
  Bound s = sqrt(Bound(sigma * sigma + t * t));
  Bound n(N);
  Bound x = Bound(16) * s * (n + pow(n, Bound(1) - Bound(sigma))) * log(n) / Bound(eps1);
  return at_least(6, mag_of(x));
}

unsigned long s3_precision(const Dyadic& t, const Bound& a_sigma, const Dyadic& eps8) {
  Bound tt(t);
  Bound x = Bound(64) * (Bound(1) + Bound(2) / (Bound(eps8) * a_sigma)) * (tt / Bound(2)) * log(tt / twopi());
  return at_least(6, mag_of(x));
}

PrecisionPlan build_precision_plan(const RSGeometry& geom, const Constants& c, const TermCounts& tc,
                                   const EpsilonCascade& e) {
  PrecisionPlan wp;
  const unsigned L = tc.L;
  Bound pi = Bound::pi();
  Bound sqpi = sqrt(pi);
  Bound A(c.A);

  wp.wprssum = std::max(mag_of(Bound(10 * (L + 1))),
                        mag_of(Bound::rational(44, 10) * Bound(c.c) * sqpi * Bound((L + 3) * (L + 3)) /
                               (Bound(e.eps2) * Bound(c.b) * geom.a))) +
               1;

  Bound b1api = Bound(c.B1) * geom.a * sqpi;
  for (unsigned k = 0; k < L; ++k) {
    Bound shape = sqrt(gamma(Bound::rational(2 * k + 1, 2))) / pow(b1api, static_cast<long>(k));
    unsigned long coef =
        std::max(mag_of(Bound(68) * Bound(L + 2) * A / Bound(e.eps4) * shape), mag_of(Bound(40 * (L + 2))));
    unsigned long term = std::max(mag_of(Bound(40 * (L + 2))),
                                  mag_of(Bound(68) * Bound((L + 2) * (L + 2)) * A / Bound(e.eps3) * shape));
    wp.wptcoef.push_back(coef);
    wp.wpterm.push_back(term);
  }
  wp.wptv = wp.wptcoef;
  wp.wppi = *std::max_element(wp.wptcoef.begin(), wp.wptcoef.end()) + 4;

  // rows of the d-table
  Bound dcommon = (Bound(1) + abs(Bound(geom.sigma))) * A * Bound(8192) / Bound(e.eps4);
  Bound dratio = Bound(8) / (pi * geom.a * geom.a * Bound(c.B1) * Bound(c.B1));
  auto wpd_at = [&](unsigned n) {
    Bound x = dcommon * pow(dratio, Bound::rational(n, 2)) * sqrt(gamma(Bound::rational(2 * n - 1, 2)));
    return std::max({6UL, mag_of(Bound(40 * L * L)), mag_of(x)});
  };
  for (unsigned n = 0; n < L; ++n) wp.wpd.push_back(wpd_at(n == 0 ? 1 : n));

  wp.wpfp = mag_of(Bound(44 * tc.J));
  for (unsigned m = 0; m < tc.M; ++m)
    wp.wpfp = std::max(wp.wpfp, mag_of(Bound(6812 * tc.J) * mpfp::factorial(m) / Bound(e.eps5[m])));

  // p carries enough bits that moving it changes F^(m)(p) by far less than eps5(m)
  Bound e2pi = exp(twopi());
  wp.wpp = wp.wpfp;
  for (unsigned m = 0; m < tc.M; ++m)
    wp.wpp = std::max(wp.wpp, mag_of(Bound(40) * e2pi * mpfp::factorial(m + 1) / Bound(e.eps5[m])));

  wp.wpsum = sum_precision(geom.sigma, geom.t, geom.N, e.eps1);

  // c_2n stage
  const int64_t le6 = e.eps6.exponent();  // eps6 = 2^le6
  wp.wpvw = std::max<int64_t>(mag_of(Bound(10 * (tc.J + 3))), 4 * static_cast<int64_t>(tc.J) + 4 - le6);
  wp.wpc0 = 4 - le6;  // 5 - mag(eps6)
  wp.wpc_outer = static_cast<unsigned long>(std::max<long>(6, 4 * static_cast<long>(tc.J) + wp.wpc0));
  auto A_v = euler_term_bounds(tc.J);
  auto B1w = p1_w_bounds(tc.J);
  auto B2w = p2_w_bounds(tc.J);
  for (unsigned n = 0; n < tc.J; ++n) {
    wp.wpc.push_back(static_cast<unsigned long>(std::max<long>(6, 4 * static_cast<long>(n) + wp.wpc0)));
    Dyadic ce = (Bound(e.eps6.ldexp(-2 * static_cast<int64_t>(n))) / Bound(6)).lower();
    wp.wpp1.push_back(mpfp::convolution_precision(n, A_v, B1w, ce));
    wp.wpp2.push_back(mpfp::convolution_precision(n, A_v, B2w, ce));
  }
  return wp;
}

PlanPtr make_plan(const RSRequest& req, const ConstantsTable& table) {
  if (req.t.sign() <= 0) throw PreconditionError("t must be positive");
  if (req.eps.sign() <= 0 || !(req.eps < Dyadic(1))) throw PreconditionError("eps must lie in (0, 1)");
  auto plan = std::make_shared<RSPlan>();
  plan->req = req;
  plan->consts = table.constants_for(req.sigma);
  RSGeometry g = derive_geometry(req, 64);
  if (!(Bound(req.sigma.abs()) * Bound(2)).certainly_le(g.a))
    throw PrecisionUnattainable(Reason::SigmaRange, "|sigma| must not exceed a/2");
  Dyadic eps2 = (Bound(g.A1 * req.eps) / Bound(3)).lower();
  TermCounts tc = choose_L(g, plan->consts, eps2);
  EpsilonCascade e = build_cascade(g, plan->consts, req.eps, tc.L);
  choose_M_and_J(g, plan->consts, tc, e);
  PrecisionPlan wp = build_precision_plan(g, plan->consts, tc, e);
  if (wp.wpp > g.p_bits) g = derive_geometry(req, wp.wpp);
  plan->geom = std::move(g);
  plan->eps = std::move(e);
  plan->counts = tc;
  plan->wp = std::move(wp);
  return plan;
}

}  // namespace rszeta::params
