#include "certgamma/cli.hpp"

#include "certgamma/bernoulli.hpp"
#include "certgamma/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace certgamma {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Rational ten_to_minus(unsigned k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return Rational(Integer(1), p);
}

struct EvalFlags {
  std::string function = "psi";
  unsigned order = 0;
  std::string x;
  std::string eps;
  std::optional<unsigned> digits;
  std::string lambda;
  std::optional<unsigned> truncation;
  std::optional<unsigned long> shift;
  std::optional<long> precision;
  bool json = false;
  std::string cache_dir;
};

void add_eval_flags(CLI::App* cmd, EvalFlags& f) {
  cmd->add_option("--function", f.function, "psi | loggamma | gamma | polygamma")
      ->check(CLI::IsMember({"psi", "loggamma", "gamma", "polygamma"}));
  cmd->add_option("--order", f.order, "derivative order m for polygamma");
  cmd->add_option("--x", f.x, "argument, decimal or p/q")->required();
  auto* eps = cmd->add_option("--eps", f.eps, "absolute tolerance");
  auto* digits = cmd->add_option("--digits", f.digits, "tolerance 10^-d");
  eps->excludes(digits);
  cmd->add_option("--lambda", f.lambda, "shift parameter in [0, 1/2]");
  cmd->add_option("--N", f.truncation, "first truncation order of the bracketing pair");
  cmd->add_option("--K", f.shift, "functional-equation shift");
  cmd->add_option("--precision", f.precision, "working precision in bits");
  cmd->add_flag("--json", f.json, "JSON output");
  cmd->add_option("--cache-dir", f.cache_dir, "directory for the Bernoulli number cache");
}

Query build_query(const EvalFlags& f) {
  Query q;
  if (f.function == "psi") {
    q.target = Target::psi(f.order);
  } else if (f.function == "polygamma") {
    q.target = Target::psi(f.order);
  } else if (f.function == "loggamma") {
    q.target = Target::log_gamma();
  } else {
    q.target = Target::gamma();
  }
  q.x = parse_rational(f.x);
  if (f.digits) {
    q.eps = ten_to_minus(*f.digits);
  } else if (!f.eps.empty()) {
    q.eps = parse_rational(f.eps);
  } else {
    throw DomainError("one of --eps or --digits is required");
  }
  if (!f.lambda.empty()) q.lambda = parse_rational(f.lambda);
  q.truncation = f.truncation;
  q.shift = f.shift;
  if (f.precision) {
    if (*f.precision < 2) throw DomainError("--precision must be at least 2 bits");
    q.precision = static_cast<Precision>(*f.precision);
  }
  return q;
}

std::filesystem::path cache_file(const std::string& dir) { return std::filesystem::path(dir) / "bernoulli.txt"; }

void load_cache(const std::string& dir) {
  if (!dir.empty()) load_bernoulli_cache(cache_file(dir));
}

void save_cache(const std::string& dir) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  save_bernoulli_cache(cache_file(dir));
}

// Endpoint rounded outward to `places` decimals, in plain positional form.
std::string outward_decimal(const Real& v, unsigned places, Round r) {
  const Rational q = v.to_rational();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  const Rational scaled = q * scale;
  Integer k;
  if (r == Round::Down) {
    mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  } else {
    mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  }
  const Rational rounded(k, scale);
  std::string text = to_decimal_string(rounded, static_cast<int>(places));
  return text;
}

// With --digits d the endpoints are printed on the 10^-d grid when the
// outward-rounded interval still has width <= 10^-d.
void snap_to_digits(OutputRecord& rec, const Enclosure& value, unsigned places) {
  const std::string lo = outward_decimal(value.lo(), places, Round::Down);
  const std::string hi = outward_decimal(value.hi(), places, Round::Up);
  const Rational width = parse_rational(hi) - parse_rational(lo);
  if (width > ten_to_minus(places)) return;
  rec.lo = lo;
  rec.hi = hi;
  // the width is now 0 or exactly one grid step
  rec.width = width == 0 ? "0" : "1e-" + std::to_string(places);
}

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  load_cache(f.cache_dir);
  const Query q = build_query(f);
  const auto start = Clock::now();
  Evaluation e = enclose(q);
  OutputRecord rec = make_record(q, e, elapsed_since(start));
  if (f.digits) snap_to_digits(rec, e.value, *f.digits);
  out << (f.json ? rec.to_json().dump() : rec.to_text()) << '\n';
  save_cache(f.cache_dir);
  return kExitOk;
}

int cmd_plan(const EvalFlags& f, std::ostream& out) {
  load_cache(f.cache_dir);
  const Query q = build_query(f);
  const Plan p = plan(q);
  nlohmann::ordered_json j;
  j["function"] = q.target.name();
  j["x"] = exact_text(q.x);
  j["eps"] = exact_text(q.eps);
  j["plan"] = plan_json(p);
  out << (f.json ? j.dump() : j.dump(2)) << '\n';
  save_cache(f.cache_dir);
  return kExitOk;
}

int cmd_verify(const std::string& suite, bool allow_inconclusive, std::ostream& out, std::ostream& err) {
  std::vector<CheckRecord> records = run_suite(suite);
  int failed = 0;
  int inconclusive = 0;
  for (const auto& r : records) {
    out << r.to_json().dump() << '\n';
    if (r.status == Status::Fail) ++failed;
    if (r.status == Status::Inconclusive) ++inconclusive;
  }
  err << records.size() << " checks, " << failed << " failed, " << inconclusive << " inconclusive\n";
  if (failed > 0 || (inconclusive > 0 && !allow_inconclusive)) return kExitVerifyFailed;
  return kExitOk;
}

std::string decimal(const Real& r, int digits, Round round = Round::Nearest) { return r.to_string(digits, round); }

int cmd_table(bool deep, std::ostream& out) {
  const Precision prec = 128;
  const Rational x(1);
  // psi(1) = psi(100) - (1 + 1/2 + ... + 1/99)
  const unsigned long shift = 99;

  const Enclosure h99 = shift_sum(Target::psi(), Enclosure::from_rational(x, prec), shift, prec);
  out << "shift sum  1 + 1/2 + ... + 1/99          " << h99.to_string(25) << '\n';

  const std::vector<Rational> literal = {Rational(1, 24), Rational(7, 960), Rational(31, 8064), Rational(127, 30720)};
  const std::vector<Rational> values = bernoulli_values(Rational(1, 2), 10);
  bool literal_ok = true;
  out << "coefficients |B_2n(1/2)|/(2n)             ";
  for (unsigned k = 1; k <= 4; ++k) {
    const Rational c = abs(values[2 * k]) / (2 * k);
    literal_ok = literal_ok && c == literal[k - 1];
    out << to_fraction_string(c) << (k < 4 ? ", " : "");
  }
  out << (literal_ok ? "  (match 1/24, 7/960, 31/8064, 127/30720)" : "  (MISMATCH)") << '\n';

  const Enclosure y = Enclosure::from_rational(x + shift, prec);
  const Enclosure f8 = eval_F(TruncationSpec(Rational(1, 2), 8), y, prec);
  out << "F_8(1/2; 100), four nonzero terms          " << f8.to_string(25) << '\n';

  const Rational coeff = abs(values[10]) / 10;
  const Real bound = first_omitted_term(TruncationSpec(Rational(1, 2), 9), y, Family::Psi);
  const bool below = compare(bound, ten_to_minus(22)) < 0;
  out << "first omitted term (" << to_fraction_string(coeff) << ") 99.5^-10  <= " << decimal(bound, 6, Round::Up)
      << (below ? "  < 1e-22" : "  NOT < 1e-22") << '\n';

  Query q;
  q.target = Target::psi();
  q.x = x;
  q.eps = ten_to_minus(20);
  q.lambda = Rational(1, 2);
  q.shift = shift;
  q.truncation = 9;
  const auto start = Clock::now();
  Evaluation e = enclose(q);
  const double ms = elapsed_since(start);
  // The reference value is rounded to 20 places.
  const Rational reference = parse_rational("-0.57721566490153286061");
  const Rational half_unit = ten_to_minus(20) / 2;
  const Enclosure rounding_cell(Real::from_rational(reference - half_unit, prec, Round::Down),
                                Real::from_rational(reference + half_unit, prec, Round::Up));
  const bool matches = e.value.overlaps(rounding_cell);
  out << "psi(1) via psi(100), N = (" << e.plan.n_lower << ", " << e.plan.n_upper << ")    "
      << e.value.to_string(25) << '\n';
  out << "  width " << decimal(e.value.width(), 3, Round::Up) << ", "
      << (matches ? "agrees with -0.57721566490153286061" : "DISAGREES with -0.57721566490153286061") << ", "
      << std::fixed << std::setprecision(2) << ms << " ms\n";
  out.unsetf(std::ios::fixed);

  if (deep) {
    Query d = q;
    d.eps = ten_to_minus(270);
    d.truncation = 601;
    d.precision = 1024;
    const auto deep_start = Clock::now();
    Evaluation de = enclose(d);
    const double deep_ms = elapsed_since(deep_start);
    const bool narrow = compare(de.value.width(), ten_to_minus(270)) < 0;
    out << "deep run: psi(100), " << de.plan.series_terms << " series terms, " << de.plan.precision << " bits\n";
    out << "  psi(1) midpoint " << decimal(de.value.midpoint(), 60) << "\n";
    out << "  width " << decimal(de.value.width(), 3, Round::Up) << (narrow ? "  < 1e-270" : "  NOT < 1e-270") << ", "
        << std::fixed << std::setprecision(1) << deep_ms << " ms\n";
    out.unsetf(std::ios::fixed);
  }
  return kExitOk;
}

int cmd_bernoulli(unsigned n, const std::string& at, bool root, bool json, std::ostream& out) {
  if (root) {
    RootBracket r = lambda0(n);
    if (json) {
      out << nlohmann::ordered_json{{"n", n},
                                    {"lo", to_fraction_string(r.lo)},
                                    {"hi", to_fraction_string(r.hi)},
                                    {"lo_decimal", to_decimal_string(r.lo, 30)},
                                    {"hi_decimal", to_decimal_string(r.hi, 30)}}
                 .dump()
          << '\n';
    } else {
      out << "root of B_" << n << " on [0, 1/2] in [" << to_decimal_string(r.lo, 30) << ", "
          << to_decimal_string(r.hi, 30) << "]\n";
    }
    return kExitOk;
  }
  const Rational value = at.empty() ? bernoulli_number(n) : eval_poly(n, parse_rational(at));
  const std::string label = at.empty() ? "B_" + std::to_string(n) : "B_" + std::to_string(n) + "(" + at + ")";
  if (json) {
    out << nlohmann::ordered_json{{"n", n}, {"at", at.empty() ? "0" : at}, {"value", to_fraction_string(value)},
                                  {"decimal", to_decimal_string(value, 30)}}
               .dump()
        << '\n';
  } else {
    out << label << " = " << to_fraction_string(value) << " ≈ " << to_decimal_string(value, 30) << '\n';
  }
  return kExitOk;
}

} // namespace

nlohmann::ordered_json plan_json(const Plan& p) {
  nlohmann::ordered_json j{{"lambda", to_fraction_string(p.lambda)},
                           {"n_lower", p.n_lower},
                           {"n_upper", p.n_upper},
                           {"k", p.shift},
                           {"precision_bits", p.precision},
                           {"series_terms", p.series_terms}};
  if (p.log_domain_eps) {
    j["log_eps"] = Real::from_rational(*p.log_domain_eps, 64, Round::Down).to_string(6, Round::Down);
  }
  return j;
}

std::string exact_text(const Rational& q) {
  Integer den = q.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_fraction_string(q);
  const unsigned places = std::max(twos, fives);
  if (places > 60) return to_fraction_string(q);
  std::string s = to_decimal_string(q, static_cast<int>(places));
  return s;
}

int print_digits(const Enclosure& value, const Rational& eps) {
  const Real mag = max(neg(value.lo()), value.hi());
  if (mag.is_zero()) return 6;
  const double digits = (log2_abs(mag) - log2_abs(eps)) * std::log10(2.0) + 4.0;
  return std::clamp(static_cast<int>(std::ceil(digits)), 6, 2000);
}

OutputRecord make_record(const Query& q, const Evaluation& e, double elapsed_ms) {
  const int digits = print_digits(e.value, q.eps);
  OutputRecord r;
  r.function = q.target.name();
  r.x = exact_text(q.x);
  r.lo = e.value.lo().to_string(digits, Round::Down);
  r.hi = e.value.hi().to_string(digits, Round::Up);
  r.width = e.value.width().to_string(3, Round::Up);
  r.plan = e.plan;
  r.elapsed_ms = elapsed_ms;
  return r;
}

nlohmann::ordered_json OutputRecord::to_json() const {
  return {{"function", function}, {"x", x},          {"lo", lo}, {"hi", hi}, {"width", width},
          {"plan", plan_json(plan)}, {"elapsed_ms", elapsed_ms}};
}

std::string OutputRecord::to_text() const {
  std::ostringstream s;
  s << function << "(" << x << ") ∈ [" << lo << ", " << hi << "]\n"
    << "  width " << width << "\n"
    << "  plan  λ=" << to_fraction_string(plan.lambda) << " N=(" << plan.n_lower << ", " << plan.n_upper
    << ") K=" << plan.shift << " " << plan.precision << " bits, " << plan.series_terms << " series terms";
  if (plan.log_domain_eps) {
    s << ", log-domain eps " << Real::from_rational(*plan.log_domain_eps, 64, Round::Down).to_string(6, Round::Down);
  }
  s << "\n  " << std::fixed << std::setprecision(3) << elapsed_ms << " ms";
  return s.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified digamma, polygamma, log-gamma and gamma values"};
  app.require_subcommand(1);

  EvalFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "enclose a function value");
  add_eval_flags(eval, eval_flags);

  EvalFlags plan_flags;
  auto* planc = app.add_subcommand("plan", "show the evaluation plan");
  add_eval_flags(planc, plan_flags);

  std::string suite = "all";
  bool allow_inconclusive = false;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "bernoulli | signs | monotone | sandwich | oracle | all")
      ->check(CLI::IsMember(suite_names()));
  verify->add_flag("--allow-inconclusive", allow_inconclusive, "do not fail on inconclusive checks");
  verify->add_flag("--json", verify_json, "JSON lines (the default format)");

  bool deep = false;
  auto* table = app.add_subcommand("table", "shifted-series reproduction for psi(1)");
  table->add_flag("--deep", deep, "include the high-precision run");

  unsigned n = 0;
  std::string at;
  bool root = false;
  bool bern_json = false;
  std::string bern_cache;
  auto* bern = app.add_subcommand("bernoulli", "exact Bernoulli numbers and polynomial values");
  bern->add_option("--n", n, "index")->required();
  bern->add_option("--at", at, "evaluate B_n at this rational");
  bern->add_flag("--lambda0", root, "root bracket of B_n on [0, 1/2]");
  bern->add_flag("--json", bern_json, "JSON output");
  bern->add_option("--cache-dir", bern_cache, "directory for the Bernoulli number cache");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    if (*eval) return cmd_eval(eval_flags, out);
    if (*planc) return cmd_plan(plan_flags, out);
    if (*verify) return cmd_verify(suite, allow_inconclusive, out, err);
    if (*table) return cmd_table(deep, out);
    if (*bern) {
      load_cache(bern_cache);
      const int code = cmd_bernoulli(n, at, root, bern_json, out);
      save_cache(bern_cache);
      return code;
    }
  } catch (const UnreachableTolerance& e) {
    err << "error: " << e.what() << '\n';
    err << "best enclosure " << e.best().value.to_string(30) << '\n';
    return kExitUnreachable;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitDomain;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

} // namespace certgamma
