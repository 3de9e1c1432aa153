#include "rszeta/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <variant>

#include "rszeta/assembly/assembly.hpp"
#include "rszeta/assembly/theta.hpp"
#include "rszeta/mpfp/ball.hpp"
#include "rszeta/mpfp/bound.hpp"
#include "rszeta/mpfp/errors.hpp"
#include "rszeta/oracle/oracle.hpp"
#include "rszeta/taylorf/cache.hpp"

namespace rszeta::cli {

using json = nlohmann::ordered_json;
using mpfp::Bound;
using mpfp::ComplexDyadic;
using mpfp::Prec;

Dyadic eps_for_digits(unsigned digits) {
  int64_t bits = (333LL * digits + 99) / 100 + 4;
  return Dyadic::pow2(-bits);
}

namespace {

mpq_class pow10q(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(k)));
  return k >= 0 ? mpq_class(1, 1) / mpq_class(p) : mpq_class(p);
}

}  // namespace

int certified_decimals(const Dyadic& eps) {
  mpq_class e2 = eps.to_mpq() * 2;
  int k = 0;
  while (e2 <= pow10q(k + 1)) ++k;
  return k;
}

int fine_decimals(const Dyadic& eps) {
  mpq_class e = eps.to_mpq();
  int k = 0;
  while (!(pow10q(k) < e)) ++k;
  return k;
}

namespace {

struct Options {
  unsigned digits = 15;
  std::optional<unsigned> bits;
  std::string format = "text";
  std::string method = "auto";
  bool strict = false;
  bool explain = false;

  Dyadic eps() const { return bits ? Dyadic::pow2(-static_cast<int64_t>(*bits)) : eps_for_digits(digits); }
};

enum class Kind { Zeta, Z, Rzeta, Theta };

struct Point {
  Kind kind;
  ComplexDyadic arg;
  bool exact = true;
  bool complex_w = false;  // Z with a nonzero imaginary part
};

struct Result {
  ComplexDyadic value;
  Dyadic eps;
  bool real = false;
  std::string method;
  std::vector<params::PlanPtr> plans;
  std::vector<assembly::BudgetEntry> ledger;
  unsigned retries = 0;
};

// failure mapped to an exit code, message for the diagnostic stream
struct Failure {
  int code;
  std::string message;
};

std::string sci(const Dyadic& x) {
  if (x.is_zero()) return "0";
  std::ostringstream s;
  double l = static_cast<double>(mpfp::mag(x) - 1);  // crude but never fails on tiny values
  s << "2^" << l;
  return s.str();
}

std::string feasibility_text(const Dyadic& t, const Dyadic& eps, const std::string& why) {
  double tt = std::abs(t.to_double());
  double log10_bound = -2.0 * tt / M_PI / std::log(10.0);
  double log10_eps = static_cast<double>(mpfp::mag(eps) - 1) * std::log10(2.0);
  std::ostringstream s;
  s << std::setprecision(4) << "infeasible: ";
  if (log10_eps < log10_bound)
    s << "requested eps below e^(-2t/pi) feasibility";
  else
    s << "requested eps not reachable at this t";
  s << " (eps ~ 10^" << log10_eps << ", e^(-2t/pi) ~ 10^" << log10_bound << " at t = " << tt << "): " << why;
  return s.str();
}

Dyadic parse_real(const std::string& text, unsigned long prec, bool& exact) {
  bool ex = true;
  Dyadic d = mpfp::parse_decimal(text, Prec(prec), &ex);
  exact = exact && ex;
  return d;
}

unsigned long input_precision(const Dyadic& eps) { return static_cast<unsigned long>(-mpfp::mag(eps) + 128); }

ComplexDyadic parse_complex(const std::string& text, unsigned long prec, bool& exact) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return ComplexDyadic(parse_real(text, prec, exact));
  return {parse_real(text.substr(0, comma), prec, exact), parse_real(text.substr(comma + 1), prec, exact)};
}

Result from_eval(const assembly::Evaluation& ev, bool real) {
  Result r;
  r.value = ev.value.value;
  r.eps = ev.value.eps;
  r.real = real;
  r.method = "riemann-siegel";
  r.plans = ev.plans;
  r.ledger = ev.ledger;
  r.retries = ev.retries;
  return r;
}

Result oracle_eval(const Point& p, const Dyadic& eps) {
  Result r;
  r.eps = eps;
  r.method = "euler-maclaurin";
  switch (p.kind) {
    case Kind::Zeta:
      r.value = oracle::em_zeta(p.arg, eps).value;
      r.real = p.arg.im.is_zero();
      break;
    case Kind::Z:
      if (p.complex_w) {
        r.value = oracle::em_Z_complex(p.arg, eps).value;
      } else {
        r.value = ComplexDyadic(oracle::em_Z(p.arg.re, eps).value);
        r.real = true;
      }
      break;
    default:
      throw PreconditionError("no Euler-Maclaurin path for this function");
  }
  return r;
}

Result rs_eval(const Point& p, const Dyadic& eps) {
  switch (p.kind) {
    case Kind::Zeta:
      return from_eval(assembly::zeta_full_detail(p.arg, eps), p.arg.im.is_zero());
    case Kind::Z:
      if (p.complex_w) return from_eval(assembly::z_complex_detail(p.arg, eps), false);
      return from_eval(assembly::z_real_detail(p.arg.re, eps), true);
    case Kind::Rzeta: {
      auto r = assembly::rzeta_detail(p.arg, eps);
      Result out;
      out.value = r.value.value;
      out.eps = r.value.eps;
      out.method = "riemann-siegel";
      out.plans = {r.plan};
      out.ledger = r.ledger;
      return out;
    }
    case Kind::Theta: {
      auto th = assembly::theta(p.arg, static_cast<unsigned long>(assembly::d0_of(eps)));
      Result out;
      out.value = th.value;
      out.eps = eps;
      out.real = p.arg.im.is_zero();
      out.method = "stirling";
      return out;
    }
  }
  throw PreconditionError("unknown function");
}

// the t that governs feasibility
Dyadic t_of(const Point& p) { return p.kind == Kind::Z ? p.arg.re : p.arg.im; }

std::variant<Result, Failure> evaluate(const Point& p, const Options& o, std::ostream& err) {
  const Dyadic eps = o.eps();
  auto fallback = [&](const std::string& why) -> std::variant<Result, Failure> {
    if (o.strict || o.method == "rs" || p.kind == Kind::Rzeta)
      return Failure{Precondition, "precondition failed: " + why};
    err << "warning: " << why << "; using Euler-Maclaurin\n";
    try {
      return oracle_eval(p, eps);
    } catch (const DomainError& e) {
      return Failure{Usage, e.what()};
    } catch (const std::exception& e) {
      return Failure{Precondition, std::string("fallback failed: ") + e.what()};
    }
  };
  if (o.method == "oracle") {
    if (p.kind == Kind::Theta) return rs_eval(p, eps);
    try {
      return oracle_eval(p, eps);
    } catch (const DomainError& e) {
      return Failure{Usage, e.what()};
    } catch (const std::exception& e) {
      return Failure{Precondition, e.what()};
    }
  }
  try {
    return rs_eval(p, eps);
  } catch (const PreconditionError& e) {
    return fallback(e.what());
  } catch (const PrecisionUnattainable& e) {
    if (e.reason == PrecisionUnattainable::Reason::SigmaRange) return fallback(e.what());
    return Failure{Infeasible, feasibility_text(t_of(p), eps, e.what())};
  } catch (const DomainError& e) {
    return Failure{Usage, e.what()};
  }
}

std::string fixed(const Dyadic& x, int k) { return mpfp::to_fixed(x, k); }

std::string text_of(const Result& r) {
  int k = certified_decimals(r.eps);
  if (r.real) return fixed(r.value.re, k);
  std::string im = fixed(r.value.im, k);
  std::string sign = im[0] == '-' ? " - " : " + ";
  if (im[0] == '-') im.erase(0, 1);
  return fixed(r.value.re, k) + sign + im + "i";
}

// x to k decimals, rounded down or up
std::string fixed_dir(const mpq_class& x, int k, bool up) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(k));
  mpq_class y = x * scale;
  mpz_class n;
  if (up)
    mpz_cdiv_q(n.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  else
    mpz_fdiv_q(n.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  bool neg = n < 0;
  std::string digits = mpz_class(abs(n)).get_str();
  if (digits.size() <= static_cast<std::size_t>(k)) digits.insert(0, static_cast<std::size_t>(k) + 1 - digits.size(), '0');
  std::string r = digits.substr(0, digits.size() - static_cast<std::size_t>(k));
  if (k > 0) r += "." + digits.substr(digits.size() - static_cast<std::size_t>(k));
  return neg ? "-" + r : r;
}

std::string interval_of(const Dyadic& v, const Dyadic& eps, int k) {
  return "[" + fixed_dir((v - eps).to_mpq(), k, false) + ", " + fixed_dir((v + eps).to_mpq(), k, true) + "]";
}

json plan_json(const params::PlanPtr& p) {
  return {{"L", p->counts.L}, {"K", p->counts.K}, {"J", p->counts.J}, {"M", p->counts.M}, {"N", p->geom.N}};
}

json json_of(const Result& r, const std::string& fn) {
  int k = fine_decimals(r.eps);
  json j;
  j["schema_version"] = 1;
  j["function"] = fn;
  j["value_re"] = fixed(r.value.re, k);
  j["value_im"] = fixed(r.value.im, k);
  j["eps_exponent"] = mpfp::mag(r.eps) - 1;
  j["method"] = r.method;
  j["plan"] = r.plans.empty() ? json(nullptr) : plan_json(r.plans[0]);
  if (r.plans.size() > 1) j["plan_reflected"] = plan_json(r.plans[1]);
  return j;
}

std::string render(const Result& r, const Options& o, const std::string& fn) {
  if (o.format == "json") return json_of(r, fn).dump();
  if (o.format == "interval") {
    int k = fine_decimals(r.eps);
    std::string s = interval_of(r.value.re, r.eps, k);
    if (!r.real) s += " + " + interval_of(r.value.im, r.eps, k) + "i";
    return s;
  }
  return text_of(r);
}

void explain(const Point& p, const Result& r, std::ostream& err) {
  err << "point: " << mpfp::to_fixed(p.arg.re, 30) << " , " << mpfp::to_fixed(p.arg.im, 30)
      << (p.exact ? "" : "  (decimal input rounded to a binary value)") << "\n";
  err << "method: " << r.method << ", eps = " << sci(r.eps) << ", precision retries: " << r.retries << "\n";
  for (const auto& pl : r.plans) {
    err << "plan sigma=" << pl->req.sigma.to_double() << " t=" << pl->req.t.to_double() << " N=" << pl->geom.N
        << " p=" << pl->geom.p.value.to_double() << " L=" << pl->counts.L << " K=" << pl->counts.K
        << " J=" << pl->counts.J << " M=" << pl->counts.M << "\n";
    err << "  wpsum=" << pl->wp.wpsum << " wprssum=" << pl->wp.wprssum << " wpfp=" << pl->wp.wpfp
        << " wpp=" << pl->wp.wpp << " wppi=" << pl->wp.wppi << " wpvw=" << pl->wp.wpvw << "\n";
    err << "  eps1=" << sci(pl->eps.eps1) << " eps2=" << sci(pl->eps.eps2) << " eps3=" << sci(pl->eps.eps3)
        << " eps4=" << sci(pl->eps.eps4) << " eps6=" << sci(pl->eps.eps6) << "\n";
  }
  for (const auto& e : r.ledger) err << "  budget " << e.stage << ": " << sci(e.eps) << "\n";
}

void add_common(CLI::App* sc, Options& o) {
  sc->add_option("--digits", o.digits, "decimal digits requested")->check(CLI::Range(1u, 100000u));
  sc->add_option("--bits", o.bits, "eps = 2^-bits (overrides --digits)")->check(CLI::Range(1u, 1000000u));
  sc->add_option("--format", o.format, "text, json or interval")
      ->check(CLI::IsMember({"text", "json", "interval"}));
  sc->add_option("--method", o.method, "auto, rs or oracle")->check(CLI::IsMember({"auto", "rs", "oracle"}));
  sc->add_flag("--strict", o.strict, "no fallback: precondition failures exit 3");
  sc->add_flag("--explain", o.explain, "plan and error budget on stderr");
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Zeta: return "zeta";
    case Kind::Z: return "Z";
    case Kind::Rzeta: return "rzeta";
    case Kind::Theta: return "theta";
  }
  return "";
}

int eval_and_print(const Point& p, const Options& o, std::ostream& out, std::ostream& err) {
  auto r = evaluate(p, o, err);
  if (auto* f = std::get_if<Failure>(&r)) {
    err << f->message << "\n";
    return f->code;
  }
  const Result& res = std::get<Result>(r);
  out << render(res, o, kind_name(p.kind)) << "\n";
  if (o.explain) explain(p, res, err);
  return Ok;
}

// ---- selftest ----

struct Check {
  std::string name;
  std::function<bool()> run;
};

bool close(const ComplexDyadic& a, const ComplexDyadic& b, const Dyadic& tol) {
  return mpfp::abs_upper(mpfp::sub(a, b, Prec(2000)), Prec(30)) < tol;
}

std::vector<Check> selftests(bool full) {
  Dyadic e30 = Dyadic::pow2(-30);
  std::vector<Check> c = {
      {"oracle zeta(2) = pi^2/6",
       [] {
         auto z = oracle::em_zeta(ComplexDyadic(Dyadic(2)), Dyadic::pow2(-80));
         mpfp::Ball pi = mpfp::Ball::pi(200);
         mpfp::Ball ref = pi * pi / mpfp::Ball::exact(Dyadic(6), 200);
         return (z.value.re - ref.mid_dyadic()).abs() < Dyadic::pow2(-79);
       }},
      {"theta at the first Gram point",
       [] {
         auto th = assembly::theta(ComplexDyadic(Dyadic::from_double(17.8455995404)), 60);
         return th.value.re.abs() < Dyadic::pow2(-28);
       }},
      {"zeta(1/2 + 3000i) against Euler-Maclaurin",
       [e30] {
         ComplexDyadic s(Dyadic::pow2(-1), Dyadic(3000));
         return close(assembly::zeta_full(s, e30).value, oracle::em_zeta(s, Dyadic::pow2(-40)).value, e30.ldexp(1));
       }},
      {"Z(5000) against Euler-Maclaurin",
       [e30] {
         auto a = assembly::z_real(Dyadic(5000), e30);
         auto b = oracle::em_Z(Dyadic(5000), Dyadic::pow2(-40));
         return (a.value - b.value).abs() < e30.ldexp(1);
       }},
  };
  if (full) {
    for (double sigma : {-1.0, 0.0, 2.0}) {
      c.push_back({"zeta off the line, sigma = " + std::to_string(sigma), [sigma] {
                     ComplexDyadic s(Dyadic::from_double(sigma), Dyadic(6000));
                     Dyadic e = Dyadic::pow2(-25);
                     return close(assembly::zeta_full(s, e).value, oracle::em_zeta(s, Dyadic::pow2(-40)).value,
                                  e.ldexp(1));
                   }});
    }
    c.push_back({"Z(w) off the real axis", [] {
                   ComplexDyadic w(Dyadic(3500), Dyadic::pow2(-2));
                   Dyadic e = Dyadic::pow2(-25);
                   return close(assembly::z_complex(w, e).value, oracle::em_Z_complex(w, Dyadic::pow2(-40)).value,
                                e.ldexp(1));
                 }});
    c.push_back({"R under budget tightening", [] {
                   ComplexDyadic s(Dyadic::pow2(-1), Dyadic(7777));
                   Dyadic e = Dyadic::pow2(-28);
                   return close(assembly::rzeta(s, e).value, assembly::rzeta(s, e.ldexp(-10)).value, e);
                 }});
  }
  return c;
}

// ---- cache ----

std::string cache_summary(const taylorf::TaylorCoefficients& tc) {
  std::ostringstream bin;
  taylorf::write_coefficients(bin, tc);
  std::ostringstream s;
  s << "version " << taylorf::CoefficientCache::kVersion << "\n"
    << "J " << tc.J << "\n"
    << "eps6 2^" << tc.eps6.exponent() << "\n"
    << "wpc0 " << tc.wpc0 << "\n"
    << "digest " << std::hex << std::setw(16) << std::setfill('0') << std::hash<std::string>{}(bin.str()) << "\n";
  return s.str();
}

taylorf::TaylorCoefficients load(const std::filesystem::path& f) {
  std::ifstream in(f, std::ios::binary);
  if (!in) throw IoError("cannot open " + f.string());
  return taylorf::read_coefficients(in);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified values of zeta(s), Z(t) and R(s) by the Riemann-Siegel formula", "rszeta"};
  app.require_subcommand(1);
  Options o;

  std::string s_text, t_text, im_text;
  auto* zeta = app.add_subcommand("zeta", "zeta(s)");
  zeta->add_option("--s", s_text, "s as re,im")->required();
  add_common(zeta, o);

  auto* Z = app.add_subcommand("Z", "Hardy Z function at t, or Z(t + iy) with --im");
  Z->add_option("--t", t_text, "t")->required();
  Z->add_option("--im", im_text, "imaginary part y of the argument");
  add_common(Z, o);

  auto* rz = app.add_subcommand("rzeta", "Riemann-Siegel integral R(s)");
  rz->add_option("--s", s_text, "s as re,im")->required();
  add_common(rz, o);

  auto* th = app.add_subcommand("theta", "Riemann-Siegel theta");
  th->add_option("--t", t_text, "t, or re,im for complex argument")->required();
  add_common(th, o);

  std::string level = "quick";
  auto* st = app.add_subcommand("selftest", "compare against Euler-Maclaurin at a few points");
  st->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));

  auto* cache = app.add_subcommand("cache", "coefficient cache");
  cache->require_subcommand(1);
  std::string cache_file, out_file;
  unsigned rebuild_J = 40, rebuild_bits = 160;
  bool text = false;
  auto* cinfo = cache->add_subcommand("info", "show cache parameters");
  cinfo->add_option("--file", cache_file, "read this file instead of the cache");
  auto* creb = cache->add_subcommand("rebuild", "recompute the coefficients");
  creb->add_option("--J", rebuild_J)->check(CLI::Range(1u, 5000u));
  creb->add_option("--eps-bits", rebuild_bits)->check(CLI::Range(8u, 100000u));
  auto* cexp = cache->add_subcommand("export", "copy the cache file, or print it as text");
  cexp->add_option("--out", out_file, "destination");
  cexp->add_flag("--text", text, "readable text instead of the binary layout");

  std::string range;
  unsigned points = 5;
  auto* bench = app.add_subcommand("bench", "time Z(t) over a range");
  bench->add_option("--t-range", range, "a:b")->required();
  bench->add_option("--points", points)->check(CLI::Range(1u, 100000u));
  add_common(bench, o);

  std::string input;
  auto* batch = app.add_subcommand("batch", "one evaluation per line: zeta|Z|rzeta|theta <arg>");
  batch->add_option("--input", input, "file, default stdin");
  add_common(batch, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    const unsigned long ip = input_precision(o.eps());
    if (zeta->parsed() || rz->parsed()) {
      Point p{zeta->parsed() ? Kind::Zeta : Kind::Rzeta, {}};
      p.arg = parse_complex(s_text, ip, p.exact);
      return eval_and_print(p, o, out, err);
    }
    if (Z->parsed()) {
      Point p{Kind::Z, {}};
      p.arg.re = parse_real(t_text, ip, p.exact);
      if (!im_text.empty()) p.arg.im = parse_real(im_text, ip, p.exact);
      p.complex_w = !p.arg.im.is_zero();
      return eval_and_print(p, o, out, err);
    }
    if (th->parsed()) {
      Point p{Kind::Theta, {}};
      p.arg = parse_complex(t_text, ip, p.exact);
      return eval_and_print(p, o, out, err);
    }
    if (st->parsed()) {
      bool ok = true;
      for (auto& c : selftests(level == "full")) {
        bool pass = false;
        try {
          pass = c.run();
        } catch (const std::exception& e) {
          err << c.name << ": " << e.what() << "\n";
        }
        ok = ok && pass;
        out << (pass ? "PASS " : "FAIL ") << c.name << "\n";
      }
      return ok ? Ok : Usage;
    }
    if (cache->parsed()) {
      auto& cc = taylorf::CoefficientCache::global();
      if (cinfo->parsed()) {
        std::filesystem::path f = cache_file.empty() ? cc.file().value_or("") : std::filesystem::path(cache_file);
        if (f.empty() || !std::filesystem::exists(f)) {
          out << "file " << (f.empty() ? "(none)" : f.string()) << "\nempty\n";
          return Ok;
        }
        out << "file " << f.string() << "\n" << cache_summary(load(f));
        return Ok;
      }
      if (creb->parsed()) {
        if (auto f = cc.file()) std::filesystem::remove(*f);
        cc.clear_memory();
        auto tc = cc.get(rebuild_J, Dyadic::pow2(-static_cast<int64_t>(rebuild_bits)));
        if (!cc.last_error().empty()) err << "warning: " << cc.last_error() << "\n";
        out << cache_summary(tc);
        return Ok;
      }
      auto f = cc.file();
      if (!f || !std::filesystem::exists(*f)) {
        err << "no cache file to export\n";
        return Usage;
      }
      auto tc = load(*f);
      std::ofstream fo;
      if (!out_file.empty()) {
        fo.open(out_file, text ? std::ios::out : std::ios::out | std::ios::binary);
        if (!fo) throw IoError("cannot write " + out_file);
      }
      std::ostream& dst = out_file.empty() ? out : fo;
      if (text)
        taylorf::export_text(dst, tc);
      else
        taylorf::write_coefficients(dst, tc);
      return Ok;
    }
    if (bench->parsed()) {
      auto colon = range.find(':');
      if (colon == std::string::npos) {
        err << "--t-range expects a:b\n";
        return Usage;
      }
      bool ex = true;
      Dyadic a = parse_real(range.substr(0, colon), ip, ex), b = parse_real(range.substr(colon + 1), ip, ex);
      int worst = Ok;
      for (unsigned i = 0; i < points; ++i) {
        Dyadic t = points == 1 ? a : a + mpfp::div(b - a, Dyadic(static_cast<long>(points - 1)), Prec(64)) *
                                             Dyadic(static_cast<long>(i));
        Point p{Kind::Z, ComplexDyadic(t)};
        auto t0 = std::chrono::steady_clock::now();
        std::ostringstream sink;
        auto r = evaluate(p, o, sink);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out << "t=" << mpfp::to_fixed(t, 6) << " ms=" << std::fixed << std::setprecision(2) << ms << " ";
        if (auto* res = std::get_if<Result>(&r)) {
          out << res->method;
          if (!res->plans.empty()) out << " L=" << res->plans[0]->counts.L << " N=" << res->plans[0]->geom.N;
          out << "\n";
        } else {
          auto& f = std::get<Failure>(r);
          out << "exit " << f.code << "\n";
          worst = std::max(worst, f.code);
        }
        out.unsetf(std::ios::floatfield);
      }
      return worst;
    }
    if (batch->parsed()) {
      std::ifstream fin;
      if (!input.empty()) {
        fin.open(input);
        if (!fin) throw IoError("cannot open " + input);
      }
      std::istream& in = input.empty() ? std::cin : fin;
      std::vector<std::string> lines;
      for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') lines.push_back(line);
      struct Line {
        std::string out, err;
        int code = Ok;
      };
      std::vector<std::future<Line>> jobs;
      for (const auto& line : lines) {
        jobs.push_back(std::async(std::launch::async, [line, o, ip] {
          Line l;
          std::istringstream ls(line);
          std::string fn, arg, extra;
          ls >> fn >> arg >> extra;
          Point p{Kind::Zeta, {}};
          if (fn == "zeta") p.kind = Kind::Zeta;
          else if (fn == "Z") p.kind = Kind::Z;
          else if (fn == "rzeta") p.kind = Kind::Rzeta;
          else if (fn == "theta") p.kind = Kind::Theta;
          else {
            l.code = Usage;
            l.out = "error: unknown function '" + fn + "'";
            return l;
          }
          try {
            p.arg = parse_complex(arg, ip, p.exact);
            if (p.kind == Kind::Z) {
              // Z takes its real argument first: "Z t" or "Z t,y"
              p.complex_w = !p.arg.im.is_zero();
            }
          } catch (const std::exception& e) {
            l.code = Usage;
            l.out = std::string("error: ") + e.what();
            return l;
          }
          std::ostringstream es;
          auto r = evaluate(p, o, es);
          l.err = es.str();
          if (auto* f = std::get_if<Failure>(&r)) {
            l.code = f->code;
            l.out = "error: " + f->message;
          } else {
            l.out = render(std::get<Result>(r), o, kind_name(p.kind));
          }
          return l;
        }));
      }
      int worst = Ok;
      for (auto& j : jobs) {
        Line l = j.get();
        err << l.err;
        out << l.out << "\n";
        worst = std::max(worst, l.code);
      }
      return worst;
    }
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return Usage;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return Usage;
  } catch (const std::invalid_argument& e) {
    err << "bad number: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}

}  // namespace rszeta::cli
