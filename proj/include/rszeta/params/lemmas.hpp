#pragma once
#include <cstddef>

#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::params {

using mpfp::Dyadic;

struct Enclosure {
  Dyadic lo, hi;
};

// Gamma(x+1) Gamma(x/3+2) / ((x+1)^2 ((x+1)^4/(3e^4))^(x/3)), x > 0
Enclosure gamma_ratio_one(const Dyadic& x);
// 2pi/(3 sqrt(3) e^(4/3)), its infimum
Enclosure gamma_ratio_one_floor();
// (3 Gamma(x/3+7/3)/(2 Gamma(x/3+2)))^(1/2) Gamma(x/2+1)/Gamma(x/2+3/2) ((x+1)/3)^(1/3), x >= 3
Enclosure gamma_ratio_two(const Dyadic& x);
// 3^(7/6) sqrt(pi Gamma(10/3)) / 2^(10/3), its supremum
Enclosure gamma_ratio_two_ceiling();
// log of 5^x / ((2pi)^((x-1)/2) Gamma(x/2+1/2)) (Gamma(x+1)/Gamma(x/3+2))^(1/2), x > 0
Enclosure log_f_increasing(const Dyadic& x);

struct ScanReport {
  std::size_t points = 0;
  std::size_t failures = 0;
  double first_failure = 0;
  bool ok() const { return points > 0 && failures == 0; }
};

// n points geometrically spaced in [lo, hi]
ScanReport scan_gamma_ratio_one(std::size_t n, double lo, double hi);
ScanReport scan_gamma_ratio_two(std::size_t n, double lo, double hi);
ScanReport scan_f_increasing(std::size_t n, double lo, double hi);

}  // namespace rszeta::params
