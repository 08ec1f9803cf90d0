#ifndef CERTGAMMA_ENCLOSURE_HPP
#define CERTGAMMA_ENCLOSURE_HPP

#include "certgamma/real.hpp"

#include <string>

namespace certgamma {

/// Closed interval [lo, hi] certified to contain a mathematical value.
///
/// Every operation rounds lo down and hi up, so containment is preserved
/// through arbitrary expressions. The working precision of a result is the
/// larger of its operands' precisions.
class Enclosure {
public:
  Enclosure(Real lo, Real hi);
  explicit Enclosure(Real point);

  /// Tightest enclosure of an exact rational at the given precision.
  static Enclosure from_rational(const Rational& q, Precision prec);
  static Enclosure from_integer(long n, Precision prec);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  Precision precision() const noexcept;

  /// hi - lo rounded up: the certified error bound.
  Real width() const;
  Real midpoint() const;

  bool contains(const Rational& q) const noexcept;
  bool contains(const Real& x) const noexcept;
  bool contains(const Enclosure& inner) const noexcept;
  bool overlaps(const Enclosure& other) const noexcept;
  bool strictly_positive() const noexcept { return lo_.sign() > 0; }
  bool strictly_negative() const noexcept { return hi_.sign() < 0; }
  /// -1 or +1 if the sign is certified, 0 if the interval touches zero.
  int certified_sign() const noexcept;

  std::string to_string(int digits = 20) const;

private:
  Real lo_;
  Real hi_;
};

Enclosure operator-(const Enclosure& a);
Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
/// Throws DomainError when the divisor contains zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

Enclosure& operator+=(Enclosure& a, const Enclosure& b);
Enclosure& operator-=(Enclosure& a, const Enclosure& b);
Enclosure& operator*=(Enclosure& a, const Enclosure& b);

/// Throws DomainError unless the argument is strictly positive.
Enclosure log(const Enclosure& a);
Enclosure exp(const Enclosure& a);
Enclosure pow(const Enclosure& a, unsigned long n);
Enclosure reciprocal(const Enclosure& a);

Enclosure hull(const Enclosure& a, const Enclosure& b);

Enclosure pi(Precision prec);
/// log(sqrt(2 pi)).
Enclosure log_sqrt_2pi(Precision prec);

} // namespace certgamma

#endif // CERTGAMMA_ENCLOSURE_HPP
