#pragma once
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>

#include "rszeta/taylorf/taylorf.hpp"

namespace rszeta::taylorf {

// Binary layout, little endian:
//   "RSZC", u32 version, u32 J, i64 log2(eps6), i64 wpc0,
//   then per n < J, re and im: u8 sign, i64 exponent, u32 length, mantissa hex
void write_coefficients(std::ostream& out, const TaylorCoefficients& tc);
TaylorCoefficients read_coefficients(std::istream& in);  // IoError on bad data
void export_text(std::ostream& out, const TaylorCoefficients& tc);

class CoefficientCache {
 public:
  static constexpr unsigned kVersion = 1;

  // no directory: memory only
  explicit CoefficientCache(std::optional<std::filesystem::path> dir = std::nullopt);
  // $RSZETA_CACHE_DIR, else $XDG_CACHE_HOME/rszeta, else ~/.cache/rszeta
  static CoefficientCache& global();

  // Coefficients good for (J, eps6): a stored set with J' >= J and eps6' <= eps6 is reused,
  // otherwise a new set is computed and supersedes the stored one.
  TaylorCoefficients get(unsigned J, const Dyadic& eps6);

  std::optional<std::filesystem::path> file() const;
  // last failure to read or write the file, empty if none
  std::string last_error() const;
  void clear_memory();
  unsigned computations() const { return computations_; }

 private:
  bool covers(const TaylorCoefficients& tc, unsigned J, const Dyadic& eps6) const;
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::optional<TaylorCoefficients> mem_;
  std::string error_;
  unsigned computations_ = 0;
};

}  // namespace rszeta::taylorf
