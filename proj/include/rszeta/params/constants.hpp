#pragma once
#include <string>
#include <vector>

#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::params {

using mpfp::Bound;
using mpfp::Dyadic;

// One row of the sigma-dependent constants. c, c1, A are upper bounds;
// b, b1, B1 lower bounds.
struct Constants {
  Dyadic sigma;
  Dyadic b, c, b1, c1, A, B1;
  std::string provenance;

  Bound B2() const;  // B1 sqrt(pi)
  // (2pi)^((m-1)/2) Gamma((m+1)/2)
  static Bound F(unsigned m);
  // A 2^k B1^-n (Gamma(n+1/2)/(3n-2k)!)^(1/2)
  Bound D(unsigned n, unsigned k) const;
  // A Gamma(k+1/2)^(1/2) / (B1 sqrt(pi))^k
  Bound T(unsigned k) const;
};

class ConstantsTable {
 public:
  static constexpr int kVersion = 1;

  static ConstantsTable load(const std::string& path);
  static ConstantsTable parse(const std::string& text, const std::string& origin = "<string>");
  // $RSZETA_CONSTANTS, else the shipped data/constants.txt; loaded once
  static const ConstantsTable& instance();

  // Row for sigma. Between grid points the two neighbours are merged
  // conservatively (max of upper-bound columns, min of lower-bound columns).
  Constants constants_for(const Dyadic& sigma) const;
  const std::vector<Constants>& rows() const { return rows_; }
  const Dyadic& lo() const { return rows_.front().sigma; }
  const Dyadic& hi() const { return rows_.back().sigma; }

 private:
  std::vector<Constants> rows_;
};

inline Constants constants_for(const Dyadic& sigma) { return ConstantsTable::instance().constants_for(sigma); }

}  // namespace rszeta::params
