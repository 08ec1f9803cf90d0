#include "oracles.hpp"

#include <mpfr.h>

namespace oracle {

using certgamma::Integer;
using certgamma::Real;
using certgamma::Round;

std::vector<Rational> akiyama_tanigawa(unsigned n) {
  std::vector<Rational> out;
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out.push_back(a[0]);
  }
  // The triangle produces B_1 = +1/2.
  if (n >= 1) out[1] = Rational(-1, 2);
  return out;
}

namespace {

using Fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Hull of f at the two roundings of x, widened well past the input error.
Enclosure bracket(Fn f, const Rational& x, Precision prec) {
  Real xl = Real::from_rational(x, prec, Round::Down);
  Real xh = Real::from_rational(x, prec, Round::Up);
  Real a(prec), b(prec), c(prec), d(prec);
  f(a.get(), xl.get(), MPFR_RNDD);
  f(b.get(), xh.get(), MPFR_RNDD);
  f(c.get(), xl.get(), MPFR_RNDU);
  f(d.get(), xh.get(), MPFR_RNDU);
  Real lo = certgamma::min(a, b);
  Real hi = certgamma::max(c, d);
  Real slack(prec);
  mpfr_set_ui_2exp(slack.get(), 1, -static_cast<long>(prec) + 40, MPFR_RNDU);
  Real mag = certgamma::max(certgamma::max(Real(prec, 1), certgamma::neg(lo)), hi);
  slack = certgamma::mul(slack, mag, Round::Up);
  return {certgamma::sub(lo, slack, Round::Down), certgamma::add(hi, slack, Round::Up)};
}

} // namespace

Enclosure digamma(const Rational& x, Precision prec) { return bracket(mpfr_digamma, x, prec); }
Enclosure lngamma(const Rational& x, Precision prec) { return bracket(mpfr_lngamma, x, prec); }
Enclosure gamma(const Rational& x, Precision prec) { return bracket(mpfr_gamma, x, prec); }

Enclosure polygamma_series(unsigned m, const Rational& x, unsigned long terms, Precision prec) {
  const Enclosure xe = Enclosure::from_rational(x, prec);
  Enclosure sum = Enclosure::from_integer(0, prec);
  for (unsigned long k = 0; k < terms; ++k) {
    sum += reciprocal(pow(xe + Enclosure::from_integer(static_cast<long>(k), prec), m + 1));
  }
  // f convex decreasing: int_T f + f(T)/2 <= sum_{k>=T} f(k) <= int_{T-1/2} f.
  const Enclosure at_t = xe + Enclosure::from_rational(Rational(Integer(terms)), prec);
  const Enclosure at_mid = at_t - Enclosure::from_rational(Rational(1, 2), prec);
  const Enclosure em = Enclosure::from_integer(m, prec);
  const Enclosure tail_lo = reciprocal(pow(at_t, m) * em) + reciprocal(pow(at_t, m + 1)) / Enclosure::from_integer(2, prec);
  const Enclosure tail_hi = reciprocal(pow(at_mid, m) * em);
  Enclosure total(certgamma::add(sum.lo(), tail_lo.lo(), Round::Down), certgamma::add(sum.hi(), tail_hi.hi(), Round::Up));

  Integer f;
  mpz_fac_ui(f.get_mpz_t(), m);
  Rational scale(f);
  if (m % 2 == 0) scale = -scale;
  return Enclosure::from_rational(scale, prec) * total;
}

Enclosure pi_squared_over_6(Precision prec) {
  const Enclosure p = certgamma::pi(prec);
  return p * p / Enclosure::from_integer(6, prec);
}

Rational harmonic(unsigned n) {
  Rational h(0);
  for (unsigned k = 1; k <= n; ++k) h += Rational(1, k);
  h.canonicalize();
  return h;
}

Rational ten_to_minus(unsigned k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return Rational(Integer(1), p);
}

} // namespace oracle
