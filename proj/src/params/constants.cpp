#include "rszeta/params/constants.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "rszeta/mpfp/errors.hpp"

namespace rszeta::params {

using mpfp::Dir;
using mpfp::Prec;

namespace {

constexpr unsigned long kLoadBits = 160;

mpq_class literal(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return mpfp::parse_rational(s);
  mpq_class num = mpfp::parse_rational(s.substr(0, slash));
  mpq_class den = mpfp::parse_rational(s.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + s + "'");
  mpq_class q = num / den;
  q.canonicalize();
  return q;
}

// q rounded at kLoadBits in direction dir (exact when q is dyadic)
Dyadic directed(const mpq_class& q, Dir dir) {
  try {
    return Dyadic::from_mpq(q);
  } catch (const DomainError&) {
  }
  Prec p(kLoadBits);
  Dyadic num = Dyadic(mpz_class(q.get_num()));
  Dyadic den = Dyadic(mpz_class(q.get_den()));
  return mpfp::div_dir(num, den, p, dir);
}

Dyadic exact_sigma(const std::string& s) {
  mpq_class q = literal(s);
  try {
    return Dyadic::from_mpq(q);
  } catch (const DomainError&) {
    throw IoError("constants: sigma '" + s + "' is not dyadic");
  }
}

}  // namespace

Bound Constants::B2() const { return Bound(B1) * sqrt(Bound::pi()); }

Bound Constants::F(unsigned m) {
  Bound twopi = Bound(2) * Bound::pi();
  Bound half = Bound::rational(static_cast<long>(m) - 1, 2);
  return pow(twopi, half) * gamma(Bound::rational(m + 1, 2));
}

Bound Constants::D(unsigned n, unsigned k) const {
  if (2 * k > 3 * n) throw PreconditionError("D(n,k) needs 2k <= 3n");
  Bound g = gamma(Bound::rational(2 * n + 1, 2)) / mpfp::factorial(3 * n - 2 * k);
  return Bound(A) * Bound(Dyadic::pow2(k)) / pow(Bound(B1), static_cast<long>(n)) * sqrt(g);
}

Bound Constants::T(unsigned k) const {
  Bound g = gamma(Bound::rational(2 * k + 1, 2));
  return Bound(A) * sqrt(g) / pow(B2(), static_cast<long>(k));
}

ConstantsTable ConstantsTable::parse(const std::string& text, const std::string& origin) {
  ConstantsTable t;
  std::istringstream in(text);
  std::string line;
  int version = -1;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw IoError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      h >> key;
      if (key == "version" && !(h >> version)) fail("bad version line");
      continue;
    }
    std::istringstream f(line);
    std::vector<std::string> cols;
    for (std::string c; f >> c;) cols.push_back(c);
    if (cols.size() < 8) fail("row without provenance");
    if (cols.size() > 8) fail("too many columns");
    Constants r;
    try {
      r.sigma = exact_sigma(cols[0]);
      r.b = directed(literal(cols[1]), Dir::Down);
      r.c = directed(literal(cols[2]), Dir::Up);
      r.b1 = directed(literal(cols[3]), Dir::Down);
      r.c1 = directed(literal(cols[4]), Dir::Up);
      r.A = directed(literal(cols[5]), Dir::Up);
      r.B1 = directed(literal(cols[6]), Dir::Down);
    } catch (const DomainError& e) {
      fail(e.what());
    }
    r.provenance = cols[7];
    if (r.provenance.find(':') == std::string::npos) fail("provenance must look like source:detail");
    if (r.b < Dyadic(2)) fail("b below 2");
    if (r.B1 < Dyadic(1)) fail("B1 below 1");
    if (r.c.sign() <= 0 || r.c1.sign() <= 0 || r.A.sign() <= 0 || r.b1.sign() <= 0) fail("non-positive constant");
    if (!t.rows_.empty() && !(t.rows_.back().sigma < r.sigma)) fail("sigma not increasing");
    t.rows_.push_back(std::move(r));
  }
  if (version != kVersion) {
    lineno = 0;
    fail("version " + std::to_string(version) + ", expected " + std::to_string(kVersion));
  }
  if (t.rows_.empty()) throw IoError(origin + ": no rows");
  return t;
}

ConstantsTable ConstantsTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open constants file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

const ConstantsTable& ConstantsTable::instance() {
  static std::once_flag once;
  static ConstantsTable table;
  std::call_once(once, [] {
    const char* env = std::getenv("RSZETA_CONSTANTS");
    table = load(env && *env ? std::string(env) : std::string(RSZETA_DATA_DIR) + "/constants.txt");
  });
  return table;
}

Constants ConstantsTable::constants_for(const Dyadic& sigma) const {
  if (sigma < lo() || hi() < sigma)
    throw PrecisionUnattainable(PrecisionUnattainable::Reason::SigmaRange,
                                "sigma = " + std::to_string(sigma.to_double()) + " outside the constants table [" +
                                    std::to_string(lo().to_double()) + ", " + std::to_string(hi().to_double()) + "]");
  auto it = std::lower_bound(rows_.begin(), rows_.end(), sigma,
                             [](const Constants& r, const Dyadic& s) { return r.sigma < s; });
  if (it->sigma == sigma) return *it;
  const Constants& l = *(it - 1);
  const Constants& h = *it;
  Constants r;
  r.sigma = sigma;
  r.b = std::min(l.b, h.b);
  r.c = std::max(l.c, h.c);
  r.b1 = std::min(l.b1, h.b1);
  r.c1 = std::max(l.c1, h.c1);
  r.A = std::max(l.A, h.A);
  r.B1 = std::min(l.B1, h.B1);
  r.provenance = "merged:" + l.provenance + "|" + h.provenance;
  return r;
}

}  // namespace rszeta::params
