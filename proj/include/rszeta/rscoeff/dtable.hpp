#pragma once
#include <functional>
#include <vector>

#include "rszeta/mpfp/approx.hpp"
#include "rszeta/params/plan.hpp"

namespace rszeta::rscoeff {

using mpfp::Dyadic;
using mpfp::RealApprox;

// Rows n < L of the coefficients d[n,k], 0 <= k <= 3n/2. Each entry carries its
// error target f_(3n/2-k) gamma(n,k).
class DTable {
 public:
  unsigned rows() const { return static_cast<unsigned>(d_.size()); }
  static unsigned row_length(unsigned n) { return 3 * n / 2 + 1; }
  // zero outside 0 <= k <= 3n/2
  const Dyadic& value(unsigned n, long k) const;
  const Dyadic& target(unsigned n, unsigned k) const { return d_.at(n).at(k).eps; }
  const RealApprox& at(unsigned n, unsigned k) const { return d_.at(n).at(k); }

 private:
  friend DTable compute_d(const Dyadic&, unsigned, const std::vector<unsigned long>&,
                          const std::function<Dyadic(unsigned, unsigned)>&);
  std::vector<std::vector<RealApprox>> d_;
};

// Recurrence at precision wpd[n] for row n; target(n,k) supplies the error targets.
DTable compute_d(const Dyadic& sigma, unsigned L, const std::vector<unsigned long>& wpd,
                 const std::function<Dyadic(unsigned, unsigned)>& target);
DTable compute_d(const params::RSPlan& plan);

// f_(3n/2-k) gamma(n,k), lower bound
Dyadic d_target(const params::RSPlan& plan, unsigned n, unsigned k);

}  // namespace rszeta::rscoeff
