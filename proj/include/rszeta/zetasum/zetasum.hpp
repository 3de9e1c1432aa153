#pragma once
#include <utility>

#include "rszeta/mpfp/approx.hpp"

namespace rszeta::zetasum {

using mpfp::ComplexApprox;
using mpfp::ComplexDyadic;
using mpfp::Dyadic;

// sum_{n=1}^N n^-s + O*(eps1). Needs t = Im s > 8 pi.
ComplexApprox zetasum(const ComplexDyadic& s, long N, const Dyadic& eps1);

// Both sums for s and s2 with shared logarithms.
std::pair<ComplexApprox, ComplexApprox> zetasum_pair(const ComplexDyadic& s, const Dyadic& eps1,
                                                     const ComplexDyadic& s2, const Dyadic& eps1b, long N);

// precision of the per-term exponentials: wpsum + 10
unsigned long term_precision(const ComplexDyadic& s, long N, const Dyadic& eps1);

}  // namespace rszeta::zetasum
