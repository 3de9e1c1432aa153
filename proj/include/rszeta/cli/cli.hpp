#pragma once
#include <iosfwd>
#include <string>

#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::cli {

using mpfp::Dyadic;

enum Exit : int { Ok = 0, Usage = 1, Infeasible = 2, Precondition = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// 2^-(ceil(3.33 digits) + 4)
Dyadic eps_for_digits(unsigned digits);
// largest k >= 0 with 2 eps <= 10^-k: every printed decimal is certified
int certified_decimals(const Dyadic& eps);
// least k with 10^-k < eps: re-reading the string lands within eps/2 of the value
int fine_decimals(const Dyadic& eps);

}  // namespace rszeta::cli
