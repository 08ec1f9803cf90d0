#ifndef CERTGAMMA_REAL_HPP
#define CERTGAMMA_REAL_HPP

#include "certgamma/rational.hpp"

#include <mpfr.h>

#include <string>

namespace certgamma {

using Precision = mpfr_prec_t;

enum class Round { Down, Up, Nearest };

constexpr mpfr_rnd_t to_mpfr(Round r) noexcept {
  switch (r) {
  case Round::Down: return MPFR_RNDD;
  case Round::Up: return MPFR_RNDU;
  case Round::Nearest: return MPFR_RNDN;
  }
  return MPFR_RNDN;
}

constexpr Round opposite(Round r) noexcept {
  return r == Round::Down ? Round::Up : (r == Round::Up ? Round::Down : Round::Nearest);
}

/// Binary floating-point number of fixed precision, owning an mpfr_t.
///
/// Arithmetic goes through the free functions below, each taking an explicit
/// rounding direction; the true result of every primitive lies between its
/// Round::Down and Round::Up results.
class Real {
public:
  explicit Real(Precision prec = 64);
  Real(Precision prec, long value);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_rational(const Rational& q, Precision prec, Round r);
  static Real from_double(double d, Precision prec);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  Precision precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(Round r = Round::Nearest) const;
  /// Exact value as a rational (every finite binary float is one).
  Rational to_rational() const;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

  /// Scientific notation with `digits` significant digits, rounded as asked.
  std::string to_string(int digits, Round r = Round::Nearest) const;

private:
  mpfr_t value_;
};

Real add(const Real& a, const Real& b, Round r);
Real sub(const Real& a, const Real& b, Round r);
Real mul(const Real& a, const Real& b, Round r);
Real div(const Real& a, const Real& b, Round r);
Real neg(const Real& a);
Real log(const Real& a, Round r);
Real exp(const Real& a, Round r);
Real pow(const Real& a, unsigned long n, Round r);
Real sqrt(const Real& a, Round r);

int compare(const Real& a, const Real& b) noexcept;
int compare(const Real& a, const Rational& q) noexcept;

inline bool operator<(const Real& a, const Real& b) noexcept { return compare(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) noexcept { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) noexcept { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) noexcept { return compare(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) noexcept { return compare(a, b) == 0; }

const Real& min(const Real& a, const Real& b) noexcept;
const Real& max(const Real& a, const Real& b) noexcept;

/// log2 of |value| as a double; -inf for zero. For magnitude estimates only.
double log2_abs(const Real& a);
double log2_abs(const Rational& q);

} // namespace certgamma

#endif // CERTGAMMA_REAL_HPP
