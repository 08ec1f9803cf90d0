#include "certgamma/enclosure.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace certgamma {

Enclosure::Enclosure(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!lo_.is_finite() || !hi_.is_finite() || compare(lo_, hi_) > 0) {
    throw std::logic_error("malformed enclosure [" + lo_.to_string(20) + ", " + hi_.to_string(20) + "]");
  }
}

Enclosure::Enclosure(Real point) : lo_(point), hi_(std::move(point)) {}

Enclosure Enclosure::from_rational(const Rational& q, Precision prec) {
  return {Real::from_rational(q, prec, Round::Down), Real::from_rational(q, prec, Round::Up)};
}

Enclosure Enclosure::from_integer(long n, Precision prec) {
  return from_rational(Rational(n), prec);
}

Precision Enclosure::precision() const noexcept { return std::max(lo_.precision(), hi_.precision()); }

Real Enclosure::width() const { return sub(hi_, lo_, Round::Up); }

Real Enclosure::midpoint() const {
  Real sum = add(lo_, hi_, Round::Nearest);
  mpfr_div_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
  return sum;
}

bool Enclosure::contains(const Rational& q) const noexcept {
  return compare(lo_, q) <= 0 && compare(hi_, q) >= 0;
}

bool Enclosure::contains(const Real& x) const noexcept { return lo_ <= x && x <= hi_; }

bool Enclosure::contains(const Enclosure& inner) const noexcept {
  return lo_ <= inner.lo_ && inner.hi_ <= hi_;
}

bool Enclosure::overlaps(const Enclosure& other) const noexcept {
  return lo_ <= other.hi_ && other.lo_ <= hi_;
}

int Enclosure::certified_sign() const noexcept {
  if (strictly_positive()) return 1;
  if (strictly_negative()) return -1;
  return 0;
}

std::string Enclosure::to_string(int digits) const {
  return "[" + lo_.to_string(digits, Round::Down) + ", " + hi_.to_string(digits, Round::Up) + "]";
}

Enclosure operator-(const Enclosure& a) { return {neg(a.hi()), neg(a.lo())}; }

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return {add(a.lo(), b.lo(), Round::Down), add(a.hi(), b.hi(), Round::Up)};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return {sub(a.lo(), b.hi(), Round::Down), sub(a.hi(), b.lo(), Round::Up)};
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.lo().sign() >= 0 && b.lo().sign() >= 0) {
    return {mul(a.lo(), b.lo(), Round::Down), mul(a.hi(), b.hi(), Round::Up)};
  }
  const Real* xs[2] = {&a.lo(), &a.hi()};
  const Real* ys[2] = {&b.lo(), &b.hi()};
  Real lo = mul(*xs[0], *ys[0], Round::Down);
  Real hi = mul(*xs[0], *ys[0], Round::Up);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      Real d = mul(*xs[i], *ys[j], Round::Down);
      Real u = mul(*xs[i], *ys[j], Round::Up);
      if (d < lo) lo = std::move(d);
      if (u > hi) hi = std::move(u);
    }
  }
  return {std::move(lo), std::move(hi)};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo().sign() <= 0 && b.hi().sign() >= 0) {
    throw DomainError("division by an enclosure containing zero");
  }
  const Real* xs[2] = {&a.lo(), &a.hi()};
  const Real* ys[2] = {&b.lo(), &b.hi()};
  Real lo = div(*xs[0], *ys[0], Round::Down);
  Real hi = div(*xs[0], *ys[0], Round::Up);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      Real d = div(*xs[i], *ys[j], Round::Down);
      Real u = div(*xs[i], *ys[j], Round::Up);
      if (d < lo) lo = std::move(d);
      if (u > hi) hi = std::move(u);
    }
  }
  return {std::move(lo), std::move(hi)};
}

Enclosure& operator+=(Enclosure& a, const Enclosure& b) { return a = a + b; }
Enclosure& operator-=(Enclosure& a, const Enclosure& b) { return a = a - b; }
Enclosure& operator*=(Enclosure& a, const Enclosure& b) { return a = a * b; }

Enclosure log(const Enclosure& a) {
  if (a.lo().sign() <= 0) {
    throw DomainError("log of an enclosure not strictly positive: " + a.to_string());
  }
  return {log(a.lo(), Round::Down), log(a.hi(), Round::Up)};
}

Enclosure exp(const Enclosure& a) { return {exp(a.lo(), Round::Down), exp(a.hi(), Round::Up)}; }

Enclosure pow(const Enclosure& a, unsigned long n) {
  if (n == 0) return Enclosure::from_integer(1, a.precision());
  if (a.lo().sign() >= 0) {
    return {pow(a.lo(), n, Round::Down), pow(a.hi(), n, Round::Up)};
  }
  if (n % 2 == 1) {
    // x^n is increasing for odd n.
    return {pow(a.lo(), n, Round::Down), pow(a.hi(), n, Round::Up)};
  }
  if (a.hi().sign() <= 0) {
    return {pow(a.hi(), n, Round::Down), pow(a.lo(), n, Round::Up)};
  }
  Real top = max(pow(a.lo(), n, Round::Up), pow(a.hi(), n, Round::Up));
  return {Real(a.precision()), std::move(top)};
}

Enclosure reciprocal(const Enclosure& a) { return Enclosure::from_integer(1, a.precision()) / a; }

Enclosure hull(const Enclosure& a, const Enclosure& b) { return {min(a.lo(), b.lo()), max(a.hi(), b.hi())}; }

Enclosure pi(Precision prec) {
  Real lo(prec);
  Real hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure log_sqrt_2pi(Precision prec) {
  Enclosure two_pi = pi(prec) * Enclosure::from_integer(2, prec);
  Enclosure l = log(two_pi);
  Real lo = l.lo();
  Real hi = l.hi();
  mpfr_div_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

} // namespace certgamma
