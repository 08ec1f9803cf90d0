#ifndef CERTGAMMA_RATIONAL_HPP
#define CERTGAMMA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace certgamma {

/// Exact rational in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Parses "p/q", an integer, or a decimal such as "-1.25e-3" into an exact
/// rational. Decimal inputs map to power-of-ten denominators.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" for integers.
std::string to_fraction_string(const Rational& q);

/// Decimal expansion truncated toward zero after `digits` fractional digits.
std::string to_decimal_string(const Rational& q, int digits);

Integer binomial(unsigned long n, unsigned long k);

/// 2^e for any integer e.
Rational pow2(long e);

} // namespace certgamma

#endif // CERTGAMMA_RATIONAL_HPP
