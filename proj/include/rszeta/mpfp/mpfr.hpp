#pragma once
#include <mpfr.h>

#include <utility>

#include "rszeta/mpfp/dyadic.hpp"

namespace rszeta::mpfp {

// Owning mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

// Exact in both directions: the target precision grows to fit the mantissa.
Mpfr to_mpfr(const Dyadic& x, mpfr_prec_t min_prec = 2);
Dyadic from_mpfr(mpfr_srcptr x);
// Rounded conversion at precision prec in direction rnd.
void set_mpfr(mpfr_ptr out, const Dyadic& x, mpfr_rnd_t rnd);

// Widens the MPFR exponent range once per process.
void ensure_mpfr_range();

}  // namespace rszeta::mpfp
