#pragma once
#include <algorithm>

#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::mpfp {

// Upper bound 1.06*r*2^-d for |eta_r|; needs r*2^-d <= 0.1.
Dyadic eta_bound(unsigned long r, unsigned long d);

// r factors (1+xi), |xi| <= 2^-d each.
struct EtaBudget {
  unsigned long r = 0;
  unsigned long d = 1;

  // product of two budgets, expressed at the coarser precision
  friend EtaBudget operator*(const EtaBudget& a, const EtaBudget& b) {
    return {a.r + b.r, std::min(a.d, b.d)};
  }
  // (1+eta_r)^-1 = (1+eta_2r)
  EtaBudget inverse() const { return {2 * r, d}; }
  // a budget at d stays valid at any coarser d2 <= d
  EtaBudget demote(unsigned long d2) const;
  bool bounded() const;
  Dyadic bound() const { return eta_bound(r, d); }
};

}  // namespace rszeta::mpfp
