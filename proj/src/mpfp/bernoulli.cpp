#include "rszeta/mpfp/bernoulli.hpp"

#include <mutex>
#include <shared_mutex>

namespace rszeta::mpfp {

namespace {

std::shared_mutex mu;
std::vector<mpq_class> all{mpq_class(1), mpq_class(-1, 2)};  // B_0, B_1, ...
std::shared_ptr<const std::vector<mpq_class>> even;

// extend B_m up to m = top with sum_{k<=m} C(m+1,k) B_k = 0
void extend(unsigned top) {
  for (unsigned m = static_cast<unsigned>(all.size()); m <= top; ++m) {
    if (m % 2) {
      all.emplace_back(0);
      continue;
    }
    mpq_class s = 0;
    mpz_class c;
    for (unsigned k = 0; k < m; ++k) {
      if (k % 2 && k > 1) continue;
      mpz_bin_uiui(c.get_mpz_t(), m + 1, k);
      s += mpq_class(c) * all[k];
    }
    mpq_class b = -s / (m + 1);
    b.canonicalize();
    all.push_back(b);
  }
}

}  // namespace

std::shared_ptr<const std::vector<mpq_class>> bernoulli_even(unsigned count) {
  {
    std::shared_lock lk(mu);
    if (even && even->size() >= count) return even;
  }
  std::unique_lock lk(mu);
  if (even && even->size() >= count) return even;
  unsigned want = std::max<unsigned>(count, even ? static_cast<unsigned>(even->size()) * 3 / 2 : 0);
  extend(2 * (want ? want - 1 : 0));
  auto v = std::make_shared<std::vector<mpq_class>>();
  for (unsigned k = 0; k < want; ++k) v->push_back(all[2 * k]);
  even = v;
  return even;
}

}  // namespace rszeta::mpfp
