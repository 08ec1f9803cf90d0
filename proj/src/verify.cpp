#include "certgamma/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <sstream>

namespace certgamma {

namespace {

constexpr Precision kCheckPrecision = 256;

Rational ten_to_minus(unsigned k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return Rational(Integer(1), p);
}

std::string fraction(const Rational& q) { return to_fraction_string(q); }


nlohmann::ordered_json spec_params(const TruncationSpec& spec) {
  return {{"lambda", fraction(spec.lambda)}, {"N", spec.order}};
}

nlohmann::ordered_json grid_json(const std::vector<Rational>& grid) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& x : grid) out.push_back(fraction(x));
  return out;
}

Enclosure engine_value(const Target& target, const Rational& x, const Rational& eps) {
  Query q;
  q.target = target;
  q.x = x;
  q.eps = eps;
  return enclose(q).value;
}

// Certified sign of diff(eps), tightening eps from 1e-20 to a 1e-40 floor.
Sign resolve_sign(const std::function<Enclosure(const Rational&)>& diff) {
  for (unsigned k = 20; k <= 40; k += 5) {
    try {
      const int s = diff(ten_to_minus(k)).certified_sign();
      if (s > 0) return Sign::Positive;
      if (s < 0) return Sign::Negative;
    } catch (const UnreachableTolerance&) {
    }
  }
  return Sign::Indeterminate;
}

SignReport make_report(std::vector<Rational> grid, std::vector<Sign> signs) {
  SignReport r{std::move(grid), std::move(signs), std::nullopt};
  for (std::size_t i = 0; i + 1 < r.signs.size(); ++i) {
    const Sign a = r.signs[i];
    const Sign b = r.signs[i + 1];
    if (a != Sign::Indeterminate && b != Sign::Indeterminate && a != b) {
      r.first_change = std::pair{r.grid[i], r.grid[i + 1]};
      break;
    }
  }
  return r;
}

std::string signs_string(const SignReport& r) {
  std::string s;
  for (Sign x : r.signs) s += x == Sign::Positive ? '+' : (x == Sign::Negative ? '-' : '?');
  return s;
}

Real horner(const std::vector<Real>& coeffs, const Real& s, Precision prec) {
  Real acc(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = add(mul(acc, s, Round::Nearest), *it, Round::Nearest);
  }
  return acc;
}

double rising(unsigned base, unsigned count) {
  double r = 1.0;
  for (unsigned i = 0; i < count; ++i) r *= base + i;
  return r;
}

// max |d^k/ds^k P(s)| over s in [0, 1].
double derivative_bound(const std::vector<Rational>& coeffs, unsigned k) {
  double b = 0.0;
  for (std::size_t j = k; j < coeffs.size(); ++j) {
    double falling = 1.0;
    for (unsigned i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
    b += std::fabs(coeffs[j].get_d()) * falling;
  }
  return b;
}

Real magnitude_hi(const Enclosure& e) {
  Real a = neg(e.lo());
  return max(a, e.hi());
}

} // namespace

std::string_view to_string(Sign s) noexcept {
  switch (s) {
  case Sign::Positive: return "+";
  case Sign::Negative: return "-";
  case Sign::Indeterminate: return "?";
  }
  return "?";
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
  case Status::Pass: return "pass";
  case Status::Fail: return "fail";
  case Status::Inconclusive: return "inconclusive";
  }
  return "fail";
}

bool SignReport::all(Sign s) const {
  return !signs.empty() && std::all_of(signs.begin(), signs.end(), [s](Sign x) { return x == s; });
}

Enclosure QuadratureResult::enclosure() const {
  return {sub(estimate, radius, Round::Down), add(estimate, radius, Round::Up)};
}

nlohmann::ordered_json CheckRecord::to_json() const {
  return {{"check", check}, {"params", params}, {"status", std::string(to_string(status))}, {"detail", detail}};
}

QuadratureResult quadrature_R_N(const TruncationSpec& spec, const Rational& x, unsigned subdivisions,
                                Precision prec) {
  if (subdivisions < 2) throw DomainError("quadrature needs at least 2 subdivisions");
  if (x <= spec.lambda + 1) {
    throw DomainError("quadrature needs x > λ + 1, got x = " + fraction(x));
  }
  const unsigned panels = subdivisions + subdivisions % 2;
  const unsigned n = spec.order;
  const BernoulliPolynomial poly = bernoulli_poly(n);
  const std::vector<Rational>& coeffs = poly.coefficients();
  std::vector<Real> coeffs_r;
  for (const auto& c : coeffs) coeffs_r.push_back(Real::from_rational(c, prec, Round::Nearest));

  double bounds[5];
  for (unsigned k = 0; k <= 4; ++k) bounds[k] = derivative_bound(coeffs, k);

  // {t} = t + 1 on [-lambda, 0) and t on [0, 1 - lambda].
  struct Piece {
    Rational a, b, offset;
  };
  std::vector<Piece> pieces;
  if (spec.lambda > 0) pieces.push_back({-spec.lambda, Rational(0), Rational(1)});
  pieces.push_back({Rational(0), 1 - spec.lambda, Rational(0)});

  Real total(prec, 0);
  double error = 0.0;
  double slack = 0.0;
  for (const Piece& piece : pieces) {
    const Rational h = (piece.b - piece.a) / panels;
    Real sum(prec, 0);
    for (unsigned i = 0; i <= panels; ++i) {
      const Rational t = piece.a + h * i;
      const Real s = Real::from_rational(t + piece.offset, prec, Round::Nearest);
      const Real denom = pow(Real::from_rational(x + t, prec, Round::Nearest), n + 1, Round::Nearest);
      Real f = div(horner(coeffs_r, s, prec), denom, Round::Nearest);
      const long weight = (i == 0 || i == panels) ? 1 : (i % 2 == 1 ? 4 : 2);
      sum = add(sum, mul(f, Real(prec, weight), Round::Nearest), Round::Nearest);
    }
    const Real h3 = Real::from_rational(h / 3, prec, Round::Nearest);
    total = add(total, mul(sum, h3, Round::Nearest), Round::Nearest);

    const double xa = Rational(x + piece.a).get_d();
    const double hd = h.get_d();
    double m4 = 0.0;
    const double choose[5] = {1, 4, 6, 4, 1};
    for (unsigned k = 0; k <= 4; ++k) {
      m4 += choose[k] * bounds[k] * rising(n + 1, 4 - k) / std::pow(xa, static_cast<double>(n + 1 + 4 - k));
    }
    error += Rational(piece.b - piece.a).get_d() * std::pow(hd, 4) / 180.0 * m4;
    const double m0 = bounds[0] / std::pow(xa, static_cast<double>(n + 1));
    slack += (panels + 1) * m0 * std::ldexp(1.0, -static_cast<int>(prec) + 6);
  }
  const double radius = (10.0 * error + slack) * (1.0 + 1e-12);
  return {std::move(total), Real::from_double(radius, prec), panels};
}

CheckResult check_shift_identity(const TruncationSpec& spec, const Rational& x) {
  const Precision prec = 128;
  QuadratureResult q = quadrature_R_N(spec, x, 256, prec);
  const Enclosure xe = Enclosure::from_rational(x, prec);
  const Enclosure x1 = Enclosure::from_rational(x + 1, prec);
  const Enclosure lhs = eval_F(spec, x1, prec) - eval_F(spec, xe, prec) - reciprocal(xe);
  const Enclosure rhs = q.enclosure();
  std::ostringstream detail;
  detail << "F(x+1) - F(x) - 1/x = " << lhs.midpoint().to_string(20) << ", quadrature "
         << q.estimate.to_string(20) << " ± " << q.radius.to_string(3, Round::Up);
  return {lhs.overlaps(rhs) ? Status::Pass : Status::Fail, detail.str()};
}

CheckResult check_remainder_sign(const TruncationSpec& spec, const Rational& x) {
  const BoundDirection d = validity(spec.order, spec.lambda);
  if (d == BoundDirection::Invalid) throw InvalidTruncation(validity_diagnostic(spec.order, spec.lambda));
  const int expected = d == BoundDirection::LowerBound ? 1 : -1;

  for (unsigned panels = 32; panels <= 8192; panels *= 4) {
    QuadratureResult q = quadrature_R_N(spec, x, panels);
    const Real magnitude = q.estimate.sign() < 0 ? neg(q.estimate) : q.estimate;
    if (magnitude > q.radius) {
      std::ostringstream detail;
      detail << "R_N ≈ " << q.estimate.to_string(12) << " ± " << q.radius.to_string(3, Round::Up) << " ("
             << panels << " panels), expected " << (expected > 0 ? "positive" : "negative");
      return {q.estimate.sign() == expected ? Status::Pass : Status::Fail, detail.str()};
    }
  }
  return {Status::Inconclusive, "quadrature radius exceeds |R_N| at 8192 panels"};
}

CheckResult check_tail_representation(const TruncationSpec& spec, const Rational& x, unsigned periods) {
  const Precision prec = 128;
  Real estimate(prec, 0);
  Real radius(prec, 0);
  for (unsigned k = 0; k < periods; ++k) {
    QuadratureResult q = quadrature_R_N(spec, x + k, 64, prec);
    estimate = add(estimate, q.estimate, Round::Nearest);
    radius = add(radius, q.radius, Round::Up);
  }
  // sup |B_N| / (N (x + P - lambda)^N) bounds the rest of the integral.
  const Rational abs_sum = bernoulli_poly(spec.order).coefficient_abs_sum();
  const Enclosure far = Enclosure::from_rational(x + periods - spec.lambda, prec);
  const Enclosure tail_e =
      Enclosure::from_rational(abs_sum / spec.order, prec) / pow(far, spec.order);
  const Real tail = tail_e.hi();
  const Real allowance = add(radius, tail, Round::Up);
  const Enclosure window(sub(estimate, allowance, Round::Down), add(estimate, allowance, Round::Up));

  const Enclosure engine_diff = engine_value(Target::psi(), x, ten_to_minus(30)) -
                                eval_F(spec, Enclosure::from_rational(x, kCheckPrecision), kCheckPrecision);
  const Real discrepancy = magnitude_hi(engine_diff - Enclosure(estimate));
  std::ostringstream detail;
  detail << "psi - F_N ∈ " << engine_diff.to_string(15) << ", integral sum " << estimate.to_string(15)
         << ", radius " << radius.to_string(3, Round::Up) << ", tail " << tail.to_string(3, Round::Up)
         << ", discrepancy " << discrepancy.to_string(3, Round::Up);
  return {window.contains(engine_diff) ? Status::Pass : Status::Fail, detail.str()};
}

std::vector<SignReport> check_complete_monotonicity(const TruncationSpec& spec, unsigned m_max,
                                                    const std::vector<Rational>& grid) {
  std::vector<SignReport> reports;
  const unsigned ceil_half = (spec.order + 1) / 2;
  for (unsigned m = 0; m <= m_max; ++m) {
    const Target target = m == 0 ? Target::log_gamma() : Target::psi(m - 1);
    const bool flip = (ceil_half + m) % 2 == 1;
    std::vector<Sign> signs;
    for (const auto& x : grid) {
      const Enclosure xe = Enclosure::from_rational(x, kCheckPrecision);
      const Enclosure approx =
          m == 0 ? eval_L(spec, xe, kCheckPrecision) : eval_L_derivative(spec, m, xe, kCheckPrecision);
      signs.push_back(resolve_sign([&](const Rational& eps) {
        Enclosure d = engine_value(target, x, eps) - approx;
        return flip ? -d : d;
      }));
    }
    reports.push_back(make_report(grid, std::move(signs)));
  }
  return reports;
}

SignReport find_sign_change(const TruncationSpec& spec, const std::vector<Rational>& grid) {
  std::vector<Sign> signs;
  for (const auto& x : grid) {
    const Enclosure approx = eval_F(spec, Enclosure::from_rational(x, kCheckPrecision), kCheckPrecision);
    signs.push_back(resolve_sign([&](const Rational& eps) { return engine_value(Target::psi(), x, eps) - approx; }));
  }
  return make_report(grid, std::move(signs));
}

CheckResult gamma_sandwich_check(unsigned n, const std::vector<Rational>& grid) {
  if (n < 1) throw DomainError("sandwich index N must be >= 1");
  Status status = Status::Pass;
  std::ostringstream detail;
  for (const auto& x : grid) {
    Status point = Status::Inconclusive;
    for (int attempt = 0; attempt < 2 && point == Status::Inconclusive; ++attempt) {
      const Precision prec = kCheckPrecision << attempt;
      const Enclosure xe = Enclosure::from_rational(x, prec);
      const Enclosure lower = eval_Gamma_N(2 * n - 1, xe, prec);
      const Enclosure upper = eval_Gamma_N(2 * n, xe, prec);
      const Enclosure g = engine_value(Target::gamma(), x, ten_to_minus(30u << attempt));
      if (lower.hi() < g.lo() && g.hi() < upper.lo()) {
        point = Status::Pass;
      } else if (lower.lo() >= g.hi() || g.lo() >= upper.hi()) {
        point = Status::Fail;
      }
    }
    if (point != Status::Pass) {
      detail << "x=" << fraction(x) << ": " << to_string(point) << "; ";
      if (status == Status::Pass || point == Status::Fail) status = point;
    }
  }
  if (status == Status::Pass) detail << "Gamma_" << 2 * n - 1 << " < Gamma < Gamma_" << 2 * n << " at all points";
  return {status, detail.str()};
}

CheckResult gamma_sandwich_nesting(unsigned n, const std::vector<Rational>& grid) {
  if (n < 1) throw DomainError("sandwich index N must be >= 1");
  Status status = Status::Pass;
  std::ostringstream detail;
  for (const auto& x : grid) {
    const Enclosure xe = Enclosure::from_rational(x, kCheckPrecision);
    const Enclosure outer_lo = eval_Gamma_N(2 * n - 1, xe, kCheckPrecision);
    const Enclosure outer_hi = eval_Gamma_N(2 * n, xe, kCheckPrecision);
    const Enclosure inner_lo = eval_Gamma_N(2 * n + 1, xe, kCheckPrecision);
    const Enclosure inner_hi = eval_Gamma_N(2 * n + 2, xe, kCheckPrecision);
    Status point = Status::Inconclusive;
    if (inner_lo.lo() >= outer_lo.hi() && inner_hi.hi() <= outer_hi.lo()) {
      point = Status::Pass;
    } else if (inner_lo.hi() < outer_lo.lo() || inner_hi.lo() > outer_hi.hi()) {
      point = Status::Fail;
    }
    if (point != Status::Pass) {
      detail << "x=" << fraction(x) << ": " << to_string(point) << " (Gamma_" << 2 * n + 1 << " = "
             << inner_lo.midpoint().to_string(10) << " vs Gamma_" << 2 * n - 1 << " = "
             << outer_lo.midpoint().to_string(10) << ", Gamma_" << 2 * n + 2 << " = "
             << inner_hi.midpoint().to_string(10) << " vs Gamma_" << 2 * n << " = "
             << outer_hi.midpoint().to_string(10) << "); ";
      if (status == Status::Pass || point == Status::Fail) status = point;
    }
  }
  if (status == Status::Pass) detail << "nested at all points";
  return {status, detail.str()};
}

Enclosure weierstrass_psi_diff(const Rational& x, const Rational& y, unsigned long terms, Precision prec) {
  if (x < 0 || y < 0) {
    throw DomainError("Weierstrass oracle needs x, y >= 0");
  }
  if (terms < 1) throw DomainError("Weierstrass oracle needs at least one term");
  if (x == y) return Enclosure::from_integer(0, prec);

  // Each term is (x - y) / ((n + x)(n + y)).
  const Rational c = x - y;
  const Real c_lo = Real::from_rational(c, prec, Round::Down);
  const Real c_hi = Real::from_rational(c, prec, Round::Up);
  const bool positive = c > 0;
  Real lo(prec, 0);
  Real hi(prec, 0);
  Real a(prec), b(prec), d_lo(prec), d_hi(prec), t(prec);
  for (unsigned long n = 1; n <= terms; ++n) {
    mpfr_set_ui(t.get(), n, MPFR_RNDN);
    mpfr_add_q(a.get(), t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(b.get(), t.get(), y.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(d_lo.get(), a.get(), b.get(), MPFR_RNDD);
    mpfr_add_q(a.get(), t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_add_q(b.get(), t.get(), y.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(d_hi.get(), a.get(), b.get(), MPFR_RNDU);
    mpfr_div(t.get(), c_lo.get(), positive ? d_hi.get() : d_lo.get(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), c_hi.get(), positive ? d_lo.get() : d_hi.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  }
  // The tail lies between the integrals of the term from T and from T + 1.
  const Rational big = Integer(terms);
  const Enclosure from_t = log(Enclosure::from_rational((big + x) / (big + y), prec));
  const Enclosure from_t1 = log(Enclosure::from_rational((big + 1 + x) / (big + 1 + y), prec));
  return Enclosure(std::move(lo), std::move(hi)) + hull(from_t, from_t1);
}

CheckResult check_psi_log_asymptote(const std::vector<Rational>& grid) {
  Status status = Status::Pass;
  std::ostringstream detail;
  std::optional<Real> previous_lo;
  for (const auto& x : grid) {
    const Enclosure psi = engine_value(Target::psi(), x, ten_to_minus(30));
    const Enclosure gap = psi - log(Enclosure::from_rational(x, kCheckPrecision));
    const Real gap_hi = magnitude_hi(gap);
    const Real gap_lo = gap.certified_sign() == 0 ? Real(kCheckPrecision, 0)
                                                   : min(magnitude_hi(Enclosure(gap.lo())), magnitude_hi(Enclosure(gap.hi())));
    detail << "x=" << fraction(x) << ": |psi - log x| <= " << gap_hi.to_string(6, Round::Up) << "; ";
    if (compare(gap_hi, Rational(1) / x) >= 0) status = Status::Fail;
    if (previous_lo && !(gap_hi < *previous_lo)) status = Status::Fail;
    previous_lo = gap_lo;
  }
  return {status, detail.str()};
}

std::vector<Rational> log_grid(double a, double b, unsigned n) {
  if (n < 2 || !(a > 0) || !(b > a)) throw DomainError("log grid needs n >= 2 and 0 < a < b");
  std::vector<Rational> out;
  const double la = std::log(a);
  const double step = (std::log(b) - la) / (n - 1);
  for (unsigned i = 0; i < n; ++i) {
    char buf[32];
    const double v = i == 0 ? a : (i + 1 == n ? b : std::exp(la + step * i));
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out.push_back(parse_rational(buf));
  }
  return out;
}

namespace {

std::vector<Rational> rationals(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(parse_rational(s));
  return out;
}

void bernoulli_suite(std::vector<CheckRecord>& out) {
  bool ok = true;
  std::string first_bad;
  for (unsigned n = 0; n <= 60 && ok; ++n) {
    const Rational expected = -(1 - pow2(1 - static_cast<long>(n))) * bernoulli_number(n);
    if (eval_poly(n, Rational(1, 2)) != expected) {
      ok = false;
      first_bad = "n=" + std::to_string(n);
    }
  }
  out.push_back({"bernoulli_half_identity", {{"n_max", 60}}, ok ? Status::Pass : Status::Fail,
                 ok ? "B_n(1/2) = -(1 - 2^(1-n)) B_n for n <= 60" : "mismatch at " + first_bad});

  ok = true;
  for (unsigned k = 1; k <= 50 && ok; ++k) {
    const Rational lhs = eval_poly(2 * k, Rational(1, 4));
    const Rational rhs = pow2(-2 * static_cast<long>(k)) * eval_poly(2 * k, Rational(1, 2));
    if (lhs != rhs) {
      ok = false;
      first_bad = "N=" + std::to_string(k);
    }
  }
  out.push_back({"bernoulli_quarter_identity", {{"N_max", 50}}, ok ? Status::Pass : Status::Fail,
                 ok ? "B_2N(1/4) = 2^(-2N) B_2N(1/2) for N <= 50" : "mismatch at " + first_bad});

  ok = true;
  for (unsigned n = 3; n <= 99 && ok; n += 2) ok = bernoulli_number(n) == 0;
  out.push_back({"bernoulli_odd_vanish", {{"n_max", 99}}, ok ? Status::Pass : Status::Fail,
                 "B_n = 0 for odd 3 <= n <= 99"});

  ok = true;
  std::ostringstream detail;
  Rational previous_gap(1);
  for (unsigned m = 2; m <= 40; m += 2) {
    const RootBracket r = lambda0(m);
    const Rational gap = Rational(1, 4) - r.hi;
    const bool below = r.hi < Rational(1, 4);
    const bool shrinking = m == 2 || gap < previous_gap;
    if (!below || !shrinking) {
      ok = false;
      detail << "M=" << m << (below ? " gap not decreasing; " : " hi >= 1/4; ");
    }
    previous_gap = gap;
  }
  if (ok) detail << "root brackets below 1/4, 1/4 - hi strictly decreasing for even M <= 40";
  out.push_back({"lambda0_brackets", {{"M_max", 40}}, ok ? Status::Pass : Status::Fail, detail.str()});
}

void signs_suite(std::vector<CheckRecord>& out) {
  const std::vector<TruncationSpec> table = {
      {Rational(0), 2},    {Rational(0), 4},    {Rational(1, 2), 1}, {Rational(1, 2), 3},
      {Rational(1, 4), 1}, {Rational(1, 4), 3}, {Rational(1, 8), 2}};
  for (const auto& spec : table) {
    for (const char* x : {"2", "5", "20"}) {
      CheckResult r = check_remainder_sign(spec, parse_rational(x));
      auto params = spec_params(spec);
      params["x"] = x;
      out.push_back({"remainder_sign", params, r.status, r.detail});
    }
  }
  for (const auto& spec : {TruncationSpec(Rational(1, 2), 1), TruncationSpec(Rational(1, 2), 2),
                           TruncationSpec(Rational(0), 3), TruncationSpec(Rational(1, 4), 4)}) {
    CheckResult r = check_shift_identity(spec, Rational(5));
    auto params = spec_params(spec);
    params["x"] = "5";
    out.push_back({"shift_identity", params, r.status, r.detail});
  }
  struct Tail {
    TruncationSpec spec;
    const char* x;
    unsigned periods;
  };
  for (const Tail& t : {Tail{{Rational(1, 2), 2}, "5", 50}, Tail{{Rational(0), 2}, "10", 100},
                        Tail{{Rational(1, 2), 1}, "2", 200}}) {
    CheckResult r = check_tail_representation(t.spec, parse_rational(t.x), t.periods);
    auto params = spec_params(t.spec);
    params["x"] = t.x;
    params["periods"] = t.periods;
    out.push_back({"tail_representation", params, r.status, r.detail});
  }

  const std::vector<Rational> grid = log_grid(0.3, 20, 24);
  struct Expect {
    TruncationSpec spec;
    Sign sign;
  };
  for (const Expect& e : {Expect{{Rational(1, 2), 1}, Sign::Positive}, Expect{{Rational(1, 2), 3}, Sign::Negative}}) {
    // F_N(lambda; .) only exists above lambda.
    std::vector<Rational> above;
    std::copy_if(grid.begin(), grid.end(), std::back_inserter(above), [&](const Rational& x) { return x > e.spec.lambda; });
    SignReport r = find_sign_change(e.spec, above);
    auto params = spec_params(e.spec);
    params["grid"] = grid_json(above);
    out.push_back({"no_sign_change", params, r.all(e.sign) ? Status::Pass : Status::Fail,
                   "signs " + signs_string(r)});
  }
  // psi - F_2(1/4; .) turns negative just above 1/4.
  const TruncationSpec invalid(Rational(1, 4), 2);
  SignReport r = find_sign_change(invalid, log_grid(0.26, 20, 40));
  auto params = spec_params(invalid);
  params["grid"] = "log 0.26..20, 40 points";
  std::string detail = "signs " + signs_string(r);
  if (r.first_change) detail += ", change in (" + fraction(r.first_change->first) + ", " + fraction(r.first_change->second) + ")";
  out.push_back({"sign_change", params, r.first_change ? Status::Pass : Status::Fail, detail});
}

void monotone_suite(std::vector<CheckRecord>& out) {
  struct Case {
    TruncationSpec spec;
    unsigned m_min, m_max;
    std::vector<Rational> grid;
  };
  const std::vector<Case> cases = {
      {{Rational(1, 2), 3}, 0, 6, rationals({"3/4", "1", "2", "5", "10"})},
      {{Rational(0), 4}, 0, 6, rationals({"1/2", "1", "3", "6", "12"})},
      {{Rational(0), 2}, 0, 6, rationals({"1/2", "1", "3", "6", "12"})},
      {{Rational(1, 4), 3}, 1, 1, rationals({"1/2", "1", "2", "5", "10"})},
  };
  for (const Case& c : cases) {
    std::vector<SignReport> reports = check_complete_monotonicity(c.spec, c.m_max, c.grid);
    for (unsigned m = c.m_min; m <= c.m_max; ++m) {
      auto params = spec_params(c.spec);
      params["m"] = m;
      params["grid"] = grid_json(c.grid);
      const SignReport& r = reports[m];
      Status s = r.all(Sign::Positive) ? Status::Pass : Status::Fail;
      if (s == Status::Fail && std::none_of(r.signs.begin(), r.signs.end(), [](Sign x) { return x == Sign::Negative; })) {
        s = Status::Inconclusive;
      }
      out.push_back({"complete_monotonicity", params, s, "signs " + signs_string(r)});
    }
  }
}

void sandwich_suite(std::vector<CheckRecord>& out) {
  const std::vector<Rational> grid = rationals({"0.6", "1", "2", "3.5", "10"});
  for (unsigned n : {1u, 2u}) {
    CheckResult r = gamma_sandwich_check(n, grid);
    out.push_back({"gamma_sandwich", {{"N", n}, {"grid", grid_json(grid)}}, r.status, r.detail});
  }
  // Nesting needs the terms up to order 2N + 2 still decreasing at x - 1/2.
  const std::vector<Rational> nest_grid = rationals({"3.5", "10", "100"});
  for (unsigned n : {1u, 2u, 3u}) {
    CheckResult r = gamma_sandwich_nesting(n, nest_grid);
    out.push_back({"gamma_sandwich_nesting", {{"N", n}, {"grid", grid_json(nest_grid)}}, r.status, r.detail});
  }
}

void oracle_suite(std::vector<CheckRecord>& out) {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"1", "0"},     {"2", "1/2"}, {"3/2", "1/3"}, {"5", "1"},   {"10", "9"},
      {"0.1", "0.2"}, {"7", "0"},   {"1/7", "20"},  {"100", "3"}, {"2.5", "2.25"}};
  for (const auto& [xs, ys] : pairs) {
    const Rational x = parse_rational(xs);
    const Rational y = parse_rational(ys);
    const Enclosure oracle = weierstrass_psi_diff(x, y, 100000);
    const Enclosure engine =
        engine_value(Target::psi(), x + 1, ten_to_minus(25)) - engine_value(Target::psi(), y + 1, ten_to_minus(25));
    out.push_back({"weierstrass_agreement", {{"x", xs}, {"y", ys}}, engine.overlaps(oracle) ? Status::Pass : Status::Fail,
                   "engine " + engine.to_string(15) + ", oracle " + oracle.to_string(15)});
  }

  const Enclosure step = engine_value(Target::psi(), Rational(2), ten_to_minus(26)) -
                         engine_value(Target::psi(), Rational(1), ten_to_minus(26));
  const bool step_ok = step.contains(Rational(1)) && compare(step.width(), ten_to_minus(25)) <= 0;
  out.push_back({"psi_step", {{"x", "1"}}, step_ok ? Status::Pass : Status::Fail,
                 "psi(2) - psi(1) ∈ " + step.to_string(30)});

  const Enclosure h9 = engine_value(Target::psi(), Rational(10), ten_to_minus(30)) -
                       engine_value(Target::psi(), Rational(1), ten_to_minus(30));
  out.push_back({"harmonic_h9", {{"x", "10"}, {"y", "1"}}, h9.contains(Rational(7129, 2520)) ? Status::Pass : Status::Fail,
                 "psi(10) - psi(1) ∈ " + h9.to_string(25) + ", H_9 = 7129/2520"});

  const std::vector<Rational> far = rationals({"10", "1000", "10000", "1000000"});
  CheckResult r = check_psi_log_asymptote(far);
  out.push_back({"psi_log_asymptote", {{"grid", grid_json(far)}}, r.status, r.detail});
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bernoulli", "signs", "monotone", "sandwich", "oracle", "all"};
  return names;
}

std::vector<CheckRecord> run_suite(const std::string& name) {
  std::vector<CheckRecord> out;
  const bool all = name == "all";
  bool known = all;
  if (all || name == "bernoulli") known = true, bernoulli_suite(out);
  if (all || name == "signs") known = true, signs_suite(out);
  if (all || name == "monotone") known = true, monotone_suite(out);
  if (all || name == "sandwich") known = true, sandwich_suite(out);
  if (all || name == "oracle") known = true, oracle_suite(out);
  if (!known) throw DomainError("unknown suite '" + name + "'");
  return out;
}

} // namespace certgamma
