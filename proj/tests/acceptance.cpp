// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include "oracles.hpp"

#include "certgamma/bernoulli.hpp"
#include "certgamma/engine.hpp"
#include "certgamma/expansions.hpp"
#include "certgamma/verify.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace certgamma;
using oracle::ten_to_minus;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

Enclosure psi_at(const Rational& x, const Rational& eps) {
  Query q;
  q.target = Target::psi();
  q.x = x;
  q.eps = eps;
  return enclose(q).value;
}

Rational dec(const char* s) { return parse_rational(s); }

Outcome criterion_1() {
  const std::string cmd = std::string(CERTGAMMA_CLI_PATH) + " eval --function psi --x 1 --digits 20 --json";
  const auto start = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {false, "could not start the binary"};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  const double secs = seconds_since(start);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "nonzero exit"};
  const auto j = nlohmann::json::parse(out);
  const Rational lo = parse_rational(j["lo"].get<std::string>());
  const Rational hi = parse_rational(j["hi"].get<std::string>());
  const Rational literal = dec("-0.57721566490153286061");
  const bool narrow = hi - lo <= ten_to_minus(20);
  const bool inside = lo <= literal && literal <= hi;
  return {narrow && inside && secs < 1.0, "width " + j["width"].get<std::string>() + ", contains literal " +
                                              (inside ? "yes" : "no") + ", " + fmt(secs) + " s"};
}

Outcome criterion_2() {
  // 99.5 = 199/2 exactly, so the bound is an exact rational.
  Rational bound = Rational(511, 67584);
  for (int i = 0; i < 10; ++i) bound *= Rational(2, 199);
  const bool exact = bound < ten_to_minus(22);
  const Real computed =
      first_omitted_term(TruncationSpec(Rational(1, 2), 9), Enclosure::from_integer(100, 128), Family::Psi);
  const bool engine = compare(computed, ten_to_minus(22)) < 0 && compare(computed, bound) >= 0;
  return {exact && engine, "(511/67584) 99.5^-10 = " + Real::from_rational(bound, 64, Round::Up).to_string(6, Round::Up) +
                               ", engine term bound " + computed.to_string(6, Round::Up)};
}

Outcome criterion_3() {
  Query q;
  q.target = Target::psi();
  q.x = Rational(1);
  q.eps = ten_to_minus(270);
  q.lambda = Rational(1, 2);
  // psi(1) = psi(100) - H_99.
  q.shift = 99;
  q.truncation = 601;
  q.precision = 1024;
  const auto start = Clock::now();
  const Evaluation e = enclose(q);
  const double secs = seconds_since(start);
  const bool narrow = compare(e.value.width(), ten_to_minus(270)) < 0;
  const bool terms = e.plan.series_terms >= 250 && e.plan.series_terms <= 350;
  const bool bits = e.plan.precision >= 1000;
  const bool truth = e.value.overlaps(oracle::digamma(Rational(1), 1200));
  return {narrow && terms && bits && truth && secs < 60.0,
          "width " + e.value.width().to_string(3, Round::Up) + ", " + std::to_string(e.plan.series_terms) +
              " terms, " + std::to_string(e.plan.precision) + " bits, " + fmt(secs) + " s"};
}

Outcome criterion_4() {
  const auto start = Clock::now();
  bool ok = true;
  for (unsigned n = 0; n <= 60; ++n) {
    ok = ok && eval_poly(n, Rational(1, 2)) == -(1 - pow2(1 - static_cast<long>(n))) * bernoulli_number(n);
  }
  for (unsigned m = 0; m <= 50; ++m) {
    ok = ok && eval_poly(2 * m, Rational(1, 4)) == pow2(-2 * static_cast<long>(m)) * eval_poly(2 * m, Rational(1, 2));
  }
  const double secs = seconds_since(start);
  return {ok && secs < 5.0, std::string(ok ? "all exact" : "mismatch") + ", " + fmt(secs) + " s"};
}

Outcome criterion_5() {
  bool below = true;
  bool decreasing = true;
  Rational previous_gap = 1;
  for (unsigned m = 2; m <= 40; m += 2) {
    const RootBracket r = lambda0(m, pow2(-256));
    below = below && r.hi < Rational(1, 4);
    const Rational gap = Rational(1, 4) - r.hi;
    decreasing = decreasing && gap < previous_gap;
    previous_gap = gap;
  }
  return {below && decreasing, std::string("hi < 1/4 ") + (below ? "yes" : "no") + ", 1/4 - hi decreasing " +
                                   (decreasing ? "yes" : "no") + ", last gap " +
                                   Real::from_rational(previous_gap, 64, Round::Up).to_string(3, Round::Up)};
}

Outcome criterion_6() {
  bool ok = true;
  std::string detail;
  for (const char* s : {"0.6", "1", "2", "10", "100"}) {
    const Rational x = dec(s);
    const Enclosure psi = psi_at(x, ten_to_minus(30));
    const bool narrow = compare(psi.width(), ten_to_minus(30)) <= 0;
    const Enclosure u = Enclosure::from_rational(x - Rational(1, 2), 256);
    const Enclosure lower = log(u);
    const Enclosure upper = lower + reciprocal(u * u * Enclosure::from_integer(24, 256));
    const bool two = psi.lo() > lower.hi();
    const bool three = psi.hi() < upper.lo();
    if (!(narrow && two && three)) detail += std::string(" x=") + s;
    ok = ok && narrow && two && three;
  }
  return {ok, ok ? "both inequalities certified at 5 points" : "failed at" + detail};
}

const std::vector<TruncationSpec>& sign_specs() {
  static const std::vector<TruncationSpec> specs = {
      TruncationSpec(Rational(0), 2),    TruncationSpec(Rational(0), 4),    TruncationSpec(Rational(1, 2), 1),
      TruncationSpec(Rational(1, 2), 3), TruncationSpec(Rational(1, 4), 1), TruncationSpec(Rational(1, 4), 3),
      TruncationSpec(Rational(1, 8), 2)};
  return specs;
}

Outcome criterion_7a() {
  int passed = 0;
  int total = 0;
  for (const auto& spec : sign_specs()) {
    for (long x : {2L, 5L, 20L}) {
      ++total;
      if (check_remainder_sign(spec, Rational(x)).passed()) ++passed;
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " remainder signs certified"};
}

Outcome criterion_7b() {
  const SignReport r = find_sign_change(TruncationSpec(Rational(1, 4), 2), log_grid(0.3, 20, 40));
  std::string detail;
  if (r.first_change) {
    detail = "sign change in (" + to_decimal_string(r.first_change->first, 4) + ", " +
             to_decimal_string(r.first_change->second, 4) + ")";
  } else {
    detail = std::string("no sign change on the grid, all ") + std::string(to_string(r.signs.front()));
  }
  return {r.first_change.has_value(), detail};
}

Outcome criterion_8() {
  struct Case {
    TruncationSpec spec;
    std::vector<Rational> grid;
  };
  const std::vector<Rational> half_grid = {Rational(3, 4), Rational(1), Rational(2), Rational(5), Rational(10)};
  const std::vector<Rational> zero_grid = {Rational(1, 2), Rational(1), Rational(3), Rational(6), Rational(12)};
  const std::vector<Case> cases = {{TruncationSpec(Rational(1, 2), 3), half_grid},
                                   {TruncationSpec(Rational(0), 4), zero_grid},
                                   {TruncationSpec(Rational(0), 2), zero_grid}};
  int good = 0;
  int total = 0;
  for (const auto& c : cases) {
    for (const auto& report : check_complete_monotonicity(c.spec, 6, c.grid)) {
      ++total;
      if (report.all(Sign::Positive)) ++good;
    }
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " (spec, m) rows fully positive"};
}

const std::vector<Rational>& sandwich_grid() {
  static const std::vector<Rational> g = {dec("0.6"), Rational(1), Rational(2), dec("3.5"), Rational(10)};
  return g;
}

Outcome criterion_9a() {
  const CheckResult one = gamma_sandwich_check(1, sandwich_grid());
  const CheckResult two = gamma_sandwich_check(2, sandwich_grid());
  return {one.passed() && two.passed(), "N=1: " + one.detail + "; N=2: " + two.detail};
}

Outcome criterion_9b() {
  const CheckResult r = gamma_sandwich_nesting(1, sandwich_grid());
  return {r.passed(), r.detail};
}

Outcome criterion_10() {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"2", "1"},   {"3", "1"},     {"5/2", "3/2"}, {"10", "1"},   {"7/3", "4/3"},
      {"4", "2"},   {"1.1", "1"},   {"20", "19"},   {"50", "3"},   {"13/4", "9/8"}};
  int agree = 0;
  for (const auto& [xs, ys] : pairs) {
    const Rational x = parse_rational(xs);
    const Rational y = parse_rational(ys);
    const Enclosure engine = psi_at(x, ten_to_minus(25)) - psi_at(y, ten_to_minus(25));
    const Enclosure series = weierstrass_psi_diff(x - 1, y - 1, 100000);
    if (engine.overlaps(series)) ++agree;
  }
  const Enclosure step = psi_at(Rational(2), ten_to_minus(27)) - psi_at(Rational(1), ten_to_minus(27));
  const bool unit = step.contains(Rational(1)) && compare(step.width(), ten_to_minus(25)) <= 0;
  return {agree == 10 && unit, std::to_string(agree) + "/10 pairs agree; psi(2) - psi(1) width " +
                                   step.width().to_string(3, Round::Up) + (unit ? ", contains 1" : ", misses 1")};
}

Outcome criterion_11() {
  const std::vector<Rational> grid = {dec("0.6"), Rational(1), dec("1.5"), Rational(2),
                                      Rational(5), Rational(10), Rational(100)};
  int failures = 0;
  std::string detail;

  // Containment monotonicity in precision.
  int containment = 0;
  for (const auto& spec : {TruncationSpec(Rational(1, 2), 9), TruncationSpec(Rational(0), 6),
                           TruncationSpec(Rational(1, 4), 5)}) {
    for (const Rational& x : {Rational(3), Rational(10), Rational(100)}) {
      for (Precision p : {64UL, 128UL, 256UL}) {
        const Enclosure at = Enclosure::from_rational(x, 4 * p);
        if (!eval_F(spec, at, p).contains(eval_F(spec, at, 2 * p))) ++containment;
        if (!eval_L(spec, at, p).contains(eval_L(spec, at, 2 * p))) ++containment;
      }
    }
  }
  failures += containment;
  detail += "containment failures " + std::to_string(containment);

  // Functional equation: the tight value at x plus 1/x lies inside the value at x + 1.
  int functional = 0;
  for (const Rational& x : grid) {
    const Enclosure next = psi_at(x + 1, ten_to_minus(20));
    const Enclosure here = psi_at(x, ten_to_minus(26));
    if (!next.contains(here + reciprocal(Enclosure::from_rational(x, 256)))) ++functional;
  }
  failures += functional;
  detail += ", functional-equation failures " + std::to_string(functional);

  // Plan coherence: a valid opposite-direction pair, and distinct plans intersect.
  int coherence = 0;
  for (const Rational& x : grid) {
    for (unsigned d : {8u, 20u}) {
      Query a;
      a.target = Target::psi();
      a.x = x;
      a.eps = ten_to_minus(d);
      Query b = a;
      b.lambda = Rational(0);
      Query c = a;
      c.shift = 300;
      const Evaluation ea = enclose(a);
      const Evaluation eb = enclose(b);
      const Evaluation ec = enclose(c);
      for (const Evaluation* e : {&ea, &eb, &ec}) {
        const Plan& p = e->plan;
        if (derivative_direction(p.n_lower, p.lambda, 1) != BoundDirection::LowerBound) ++coherence;
        if (derivative_direction(p.n_upper, p.lambda, 1) != BoundDirection::UpperBound) ++coherence;
        if (!(x + p.shift > p.lambda + 1)) ++coherence;
        if (compare(e->value.width(), a.eps) > 0) ++coherence;
      }
      if (!ea.value.overlaps(eb.value) || !ea.value.overlaps(ec.value) || !eb.value.overlaps(ec.value)) ++coherence;
    }
  }
  failures += coherence;
  detail += ", plan-coherence failures " + std::to_string(coherence);
  return {failures == 0, detail};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 psi(1) to 20 digits from the command line", criterion_1},
      {"2 first omitted term below 1e-22", criterion_2},
      {"3 deep psi(1) run below 1e-270", criterion_3},
      {"4 Bernoulli half and quarter identities", criterion_4},
      {"5 lambda0 brackets below 1/4 and approaching it", criterion_5},
      {"6 log inequalities certified", criterion_6},
      {"7a remainder sign table", criterion_7a},
      {"7b sign change for (1/4, 2) on a grid in (0.3, 20)", criterion_7b},
      {"8 sampled complete monotonicity", criterion_8},
      {"9a gamma sandwich for N = 1, 2", criterion_9a},
      {"9b N = 2 bracket nests inside N = 1 on the sandwich grid", criterion_9b},
      {"10 Weierstrass oracle agreement", criterion_10},
      {"11 property suite", criterion_11},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " :: " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
