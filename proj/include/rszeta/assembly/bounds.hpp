#pragma once
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::assembly {

using mpfp::Bound;
using mpfp::Dyadic;

// |R(sigma+it)| for t > 16 pi. sigma = 0 takes the left-hand bound, which
// stays valid in the limit.
Bound R_bound(const Dyadic& sigma, const Dyadic& t);
// |chi(sigma+it)| for t > 1/2 (and |s| >= 2 pi e when sigma > 0)
Bound chi_bound(const Dyadic& sigma, const Dyadic& t);
// |theta(w)| <= 2|w| log|w| for |w| > 4, |Re w| >= 1
Bound theta_bound(const Dyadic& re, const Dyadic& im);

struct ZetaBounds {
  Bound M1, M2, X, T;
};
// bounds at s = sigma + it for the functional-equation paths
ZetaBounds zeta_bounds(const Dyadic& sigma, const Dyadic& t);

}  // namespace rszeta::assembly
