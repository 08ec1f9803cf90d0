#include "oracles.hpp"

#include "certgamma/expansions.hpp"

#include <doctest.h>

#include <functional>

using namespace certgamma;

namespace {

constexpr Precision kPrec = 256;

Enclosure at(const Rational& x) { return Enclosure::from_rational(x, kPrec); }

Enclosure ln(const Rational& q) { return log(at(q)); }

// Central differences of L_N at 640 bits; truncation error ~ h^2 times the
// next derivative.
Enclosure finite_difference(const TruncationSpec& spec, const Rational& x, unsigned order) {
  const Precision p = 640;
  const Rational h = oracle::ten_to_minus(40);
  auto f = [&](const Rational& t) { return eval_L(spec, Enclosure::from_rational(t, p), p); };
  const Enclosure hh = Enclosure::from_rational(h, p);
  switch (order) {
  case 1: return (f(x + h) - f(x - h)) / (hh * Enclosure::from_integer(2, p));
  case 2: return (f(x + h) - f(x) * Enclosure::from_integer(2, p) + f(x - h)) / pow(hh, 2);
  default:
    return (f(x + 2 * h) - f(x + h) * Enclosure::from_integer(2, p) + f(x - h) * Enclosure::from_integer(2, p) -
            f(x - 2 * h)) /
           (pow(hh, 3) * Enclosure::from_integer(2, p));
  }
}

bool near(const Enclosure& a, const Enclosure& b, const Rational& tol) {
  const Enclosure d = a - b;
  return compare(d.lo(), -tol) >= 0 && compare(d.hi(), tol) <= 0;
}

} // namespace

TEST_CASE("truncation spec validates its fields") {
  CHECK_THROWS_AS(TruncationSpec(Rational(3, 4), 2), DomainError);
  CHECK_THROWS_AS(TruncationSpec(Rational(-1), 2), DomainError);
  CHECK_THROWS_AS(TruncationSpec(Rational(0), 0), DomainError);
}

TEST_CASE("digamma truncations in closed form") {
  // F_1(1/2; 2) = log(3/2) since B_1(1/2) = 0.
  const Enclosure f1 = eval_F(TruncationSpec(Rational(1, 2), 1), at(2), kPrec);
  CHECK(f1.overlaps(ln(Rational(3, 2))));
  CHECK(near(f1, ln(Rational(3, 2)), pow2(-240)));

  // F_3(1/2; 2) = log(3/2) + (1/24)(3/2)^-2.
  const Enclosure f3 = eval_F(TruncationSpec(Rational(1, 2), 3), at(2), kPrec);
  CHECK(near(f3, ln(Rational(3, 2)) + at(Rational(1, 54)), pow2(-240)));

  // F_2(1/4; 1): u = 3/4, B_1(1/4) = -1/4, B_2(1/4) = -1/48.
  const Enclosure f2 = eval_F(TruncationSpec(Rational(1, 4), 2), at(1), kPrec);
  const Rational series = Rational(-1, 4) * Rational(4, 3) * -1 + Rational(-1, 48) / 2 * Rational(16, 9);
  CHECK(near(f2, ln(Rational(3, 4)) - at(series), pow2(-240)));
}

TEST_CASE("log-gamma truncations in closed form") {
  // L_3(1/2; 3/2) = log sqrt(2 pi) - 1 - 1/24.
  const Enclosure l3 = eval_L(TruncationSpec(Rational(1, 2), 3), at(Rational(3, 2)), kPrec);
  CHECK(near(l3, log_sqrt_2pi(kPrec) - at(Rational(25, 24)), pow2(-240)));
  // It is a lower bound for log Gamma(3/2).
  CHECK(l3.hi() < oracle::lngamma(Rational(3, 2)).lo());

  // L_4(0; 1) = log sqrt(2 pi) - 1 + 1/12 - 1/360.
  const Enclosure l4 = eval_L(TruncationSpec(Rational(0), 4), at(1), kPrec);
  CHECK(near(l4, log_sqrt_2pi(kPrec) - at(Rational(1 * 360 - 30 + 1, 360)), pow2(-240)));
  CHECK(l4.hi().sign() < 0);
}

TEST_CASE("derivative closed form") {
  // d^2/dx^2 L_3(1/2; x) = 1/u - (1/12) u^-3 at u = 3/2.
  const Enclosure d2 = eval_L_derivative(TruncationSpec(Rational(1, 2), 3), 2, at(2), kPrec);
  CHECK(near(d2, at(Rational(52, 81)), pow2(-240)));
  CHECK_THROWS_AS(eval_L_derivative(TruncationSpec(Rational(1, 2), 3), 0, at(2), kPrec), DomainError);
}

TEST_CASE("first derivative of L agrees with F") {
  for (const Rational& lambda : {Rational(0), Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
    for (unsigned n = 1; n <= 12; ++n) {
      for (const Rational& x : {Rational(7, 5), Rational(3), Rational(40)}) {
        const TruncationSpec spec(lambda, n);
        CHECK(near(eval_L_derivative(spec, 1, at(x), kPrec), eval_F(spec, at(x), kPrec), pow2(-230)));
      }
    }
  }
}

TEST_CASE("derivatives match finite differences of L") {
  for (const TruncationSpec& spec : {TruncationSpec(Rational(1, 2), 5), TruncationSpec(Rational(0), 6),
                                     TruncationSpec(Rational(1, 3), 7)}) {
    for (const Rational& x : {Rational(3, 2), Rational(5), Rational(17, 3)}) {
      for (unsigned m = 1; m <= 3; ++m) {
        const Enclosure fd = finite_difference(spec, x, m);
        const Enclosure exact = eval_L_derivative(spec, m, at(x), kPrec);
        CHECK_MESSAGE(near(fd, exact, oracle::ten_to_minus(60)), "m=" << m << " x=" << to_fraction_string(x));
      }
    }
  }
}

TEST_CASE("term coefficients") {
  CHECK(term_coefficient(Rational(1, 2), 2, 0) == Rational(-1, 24));
  CHECK(term_coefficient(Rational(0), 2, 0) == Rational(1, 12));
  CHECK(term_coefficient(Rational(0), 4, 0) == Rational(-1, 360));
  // d = 1 reproduces the digamma coefficients -(-1)^n B_n/n.
  CHECK(term_coefficient(Rational(0), 2, 1) == Rational(-1, 12));
  CHECK(term_coefficient(Rational(1, 2), 3, 1) == 0);
  CHECK_THROWS_AS(term_coefficient(Rational(0), 1, 0), DomainError);
}

TEST_CASE("Sonin approximants") {
  // Gamma_1(1) = sqrt(pi) exp(-1/2 - 1/12), below Gamma(1) = 1.
  const Enclosure g1 = eval_Gamma_N(1, at(1), kPrec);
  const Enclosure expected = exp(log(pi(kPrec)) * at(Rational(1, 2)) - at(Rational(7, 12)));
  CHECK(near(g1, expected, pow2(-230)));
  CHECK(compare(g1.hi(), Rational(1)) < 0);
  CHECK(compare(eval_Gamma_N(2, at(1), kPrec).lo(), Rational(1)) > 0);
  CHECK_THROWS_AS(eval_Gamma_N(1, at(Rational(1, 2)), kPrec), DomainError);
  CHECK_THROWS_AS(eval_Gamma_N(0, at(2), kPrec), DomainError);
}

TEST_CASE("first omitted term") {
  // (511/67584) 99.5^-10 is the n = 10 term of F_9(1/2; 100).
  Rational exact = Rational(511, 67584);
  for (int i = 0; i < 10; ++i) exact *= Rational(2, 199);
  const Real bound = first_omitted_term(TruncationSpec(Rational(1, 2), 9), at(100), Family::Psi);
  CHECK(compare(bound, exact) >= 0);
  CHECK(compare(bound, exact * (1 + pow2(-50))) <= 0);
  CHECK(compare(bound, oracle::ten_to_minus(22)) < 0);

  // B_9(1/2) = 0: nothing is omitted at N = 8 beyond the next nonzero term.
  CHECK(first_omitted_term(TruncationSpec(Rational(1, 2), 8), at(100), Family::Psi).is_zero());

  // n = 4 term of L_3(0; 10): |B_4|/12 * 10^-3.
  const Real lg = first_omitted_term(TruncationSpec(Rational(0), 3), at(10), Family::LogGamma);
  CHECK(compare(lg, Rational(1, 360000)) >= 0);
  CHECK(compare(lg, Rational(1, 360000) * (1 + pow2(-50))) <= 0);
}

TEST_CASE("arguments at or below lambda are rejected") {
  const TruncationSpec spec(Rational(1, 2), 3);
  CHECK_THROWS_AS(eval_F(spec, at(Rational(1, 2)), kPrec), DomainError);
  CHECK_THROWS_AS(eval_L(spec, at(Rational(1, 4)), kPrec), DomainError);
  CHECK_THROWS_AS(eval_L_derivative(spec, 2, at(Rational(0)), kPrec), DomainError);
  CHECK_THROWS_AS(first_omitted_term(spec, at(Rational(1, 2)), Family::Psi), DomainError);
}
