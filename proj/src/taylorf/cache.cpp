#include "rszeta/taylorf/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "rszeta/mpfp/errors.hpp"

namespace rszeta::taylorf {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'R', 'S', 'Z', 'C'};

template <class T>
void put(std::ostream& out, T v) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((u >> (8 * i)) & 0xff));
}

template <class T>
T get(std::istream& in) {
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == EOF) throw IoError("coefficient cache: truncated file");
    u |= static_cast<U>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(u);
}

void put_dyadic(std::ostream& out, const Dyadic& x) {
  put<uint8_t>(out, x.sign() < 0 ? 1 : 0);
  put<int64_t>(out, x.exponent());
  mpz_class m = ::abs(x.mantissa());
  std::string hex = m.get_str(16);
  put<uint32_t>(out, static_cast<uint32_t>(hex.size()));
  out.write(hex.data(), static_cast<std::streamsize>(hex.size()));
}

Dyadic get_dyadic(std::istream& in) {
  auto neg = get<uint8_t>(in);
  auto e = get<int64_t>(in);
  auto len = get<uint32_t>(in);
  if (neg > 1 || len == 0 || len > (1u << 24)) throw IoError("coefficient cache: bad record");
  std::string hex(len, '\0');
  if (!in.read(hex.data(), len)) throw IoError("coefficient cache: truncated file");
  mpz_class m;
  if (m.set_str(hex, 16) != 0) throw IoError("coefficient cache: bad mantissa");
  if (neg) m = -m;
  Dyadic d = Dyadic::from_parts(m, e);
  if (!(d.exponent() == e || m == 0)) throw IoError("coefficient cache: mantissa not normalized");
  return d;
}

std::optional<fs::path> default_dir() {
  if (const char* d = std::getenv("RSZETA_CACHE_DIR"); d && *d) return fs::path(d);
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "rszeta";
  if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "rszeta";
  return std::nullopt;
}

}  // namespace

void write_coefficients(std::ostream& out, const TaylorCoefficients& tc) {
  out.write(kMagic, 4);
  put<uint32_t>(out, CoefficientCache::kVersion);
  put<uint32_t>(out, tc.J);
  put<int64_t>(out, tc.eps6.exponent());
  put<int64_t>(out, tc.wpc0);
  for (const auto& c : tc.c2n) {
    put_dyadic(out, c.re);
    put_dyadic(out, c.im);
  }
}

TaylorCoefficients read_coefficients(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4))
    throw IoError("coefficient cache: bad magic");
  if (get<uint32_t>(in) != CoefficientCache::kVersion) throw IoError("coefficient cache: version mismatch");
  TaylorCoefficients tc;
  tc.J = get<uint32_t>(in);
  if (tc.J == 0 || tc.J > 100000) throw IoError("coefficient cache: bad J");
  tc.eps6 = Dyadic::pow2(get<int64_t>(in));
  tc.wpc0 = static_cast<long>(get<int64_t>(in));
  if (tc.wpc0 != 4 - tc.eps6.exponent()) throw IoError("coefficient cache: wpc0 does not match eps6");
  for (unsigned n = 0; n < tc.J; ++n) {
    Dyadic re = get_dyadic(in);
    Dyadic im = get_dyadic(in);
    tc.c2n.emplace_back(re, im);
  }
  return tc;
}

void export_text(std::ostream& out, const TaylorCoefficients& tc) {
  out << "# rszeta c2n coefficients\n";
  out << "version " << CoefficientCache::kVersion << "\n";
  out << "J " << tc.J << "\n";
  out << "eps6 2^" << tc.eps6.exponent() << "\n";
  out << "wpc0 " << tc.wpc0 << "\n";
  for (unsigned n = 0; n < tc.J; ++n) {
    const auto& c = tc.c2n[n];
    out << n << " " << (c.re.sign() < 0 ? "-" : "+") << mpz_class(::abs(c.re.mantissa())).get_str(16) << "p" << c.re.exponent()
        << " " << (c.im.sign() < 0 ? "-" : "+") << mpz_class(::abs(c.im.mantissa())).get_str(16) << "p" << c.im.exponent()
        << "  # " << mpfp::to_fixed(c.re, 30) << " " << mpfp::to_fixed(c.im, 30) << "\n";
  }
}

CoefficientCache::CoefficientCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

CoefficientCache& CoefficientCache::global() {
  static CoefficientCache cache(default_dir());
  return cache;
}

std::optional<fs::path> CoefficientCache::file() const {
  if (!dir_) return std::nullopt;
  return *dir_ / "c2n.bin";
}

std::string CoefficientCache::last_error() const {
  std::lock_guard lk(mu_);
  return error_;
}

void CoefficientCache::clear_memory() {
  std::lock_guard lk(mu_);
  mem_.reset();
}

bool CoefficientCache::covers(const TaylorCoefficients& tc, unsigned J, const Dyadic& eps6) const {
  return tc.J >= J && tc.eps6 <= eps6;
}

TaylorCoefficients CoefficientCache::get(unsigned J, const Dyadic& eps6) {
  std::lock_guard lk(mu_);
  if (mem_ && covers(*mem_, J, eps6)) return *mem_;
  auto path = file();
  if (path && fs::exists(*path)) {
    try {
      std::ifstream in(*path, std::ios::binary);
      TaylorCoefficients tc = read_coefficients(in);
      if (!mem_ || (tc.J >= mem_->J && tc.eps6 <= mem_->eps6)) mem_ = tc;
      if (covers(tc, J, eps6)) return tc;
    } catch (const IoError& e) {
      error_ = e.what();
    }
  }
  // the new set also covers what was held before
  unsigned nJ = J;
  Dyadic ne = eps6;
  if (mem_) {
    nJ = std::max(nJ, mem_->J);
    ne = std::min(ne, mem_->eps6);
  }
  TaylorCoefficients tc = compute_c2n(nJ, ne);
  ++computations_;
  mem_ = tc;
  if (path) {
    try {
      fs::create_directories(path->parent_path());
      std::random_device rd;
      fs::path tmp = *path;
      tmp += ".tmp" + std::to_string(rd());
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        write_coefficients(out, tc);
        if (!out.flush()) throw IoError("write failed for " + tmp.string());
      }
      fs::rename(tmp, *path);
      error_.clear();
    } catch (const std::exception& e) {
      error_ = e.what();
    }
  }
  return tc;
}

}  // namespace rszeta::taylorf
