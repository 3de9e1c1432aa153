#pragma once
#include <gmpxx.h>

#include <memory>
#include <vector>

namespace rszeta::mpfp {

// B_0, B_2, ..., B_(2(count-1)), exact. Cached; safe to call concurrently.
std::shared_ptr<const std::vector<mpq_class>> bernoulli_even(unsigned count);

}  // namespace rszeta::mpfp
