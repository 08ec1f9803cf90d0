#include "certgamma/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace certgamma {

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(Precision prec, long value) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_rational(const Rational& q, Precision prec, Round r) {
  Real out(prec);
  mpfr_set_q(out.value_, q.get_mpq_t(), to_mpfr(r));
  return out;
}

Real Real::from_double(double d, Precision prec) {
  Real out(prec);
  mpfr_set_d(out.value_, d, MPFR_RNDN);
  return out;
}

double Real::to_double(Round r) const { return mpfr_get_d(value_, to_mpfr(r)); }

Rational Real::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Real::to_string(int digits, Round r) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";

  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), value_, to_mpfr(r));
  std::string s(raw);
  mpfr_free_str(raw);

  std::string sign;
  if (s.front() == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  // mpfr returns 0.DDDD x 10^exp10; print as D.DDD e(exp10-1).
  std::string out = sign + s.substr(0, 1);
  if (s.size() > 1) {
    out += "." + s.substr(1);
  }
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

Real add(const Real& a, const Real& b, Round r) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_add(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

Real sub(const Real& a, const Real& b, Round r) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_sub(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

Real mul(const Real& a, const Real& b, Round r) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_mul(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

Real div(const Real& a, const Real& b, Round r) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_div(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

Real neg(const Real& a) {
  Real out(a.precision());
  mpfr_neg(out.get(), a.get(), MPFR_RNDN);
  return out;
}

Real log(const Real& a, Round r) {
  Real out(a.precision());
  mpfr_log(out.get(), a.get(), to_mpfr(r));
  return out;
}

Real exp(const Real& a, Round r) {
  Real out(a.precision());
  mpfr_exp(out.get(), a.get(), to_mpfr(r));
  return out;
}

Real pow(const Real& a, unsigned long n, Round r) {
  Real out(a.precision());
  mpfr_pow_ui(out.get(), a.get(), n, to_mpfr(r));
  return out;
}

Real sqrt(const Real& a, Round r) {
  Real out(a.precision());
  mpfr_sqrt(out.get(), a.get(), to_mpfr(r));
  return out;
}

int compare(const Real& a, const Real& b) noexcept { return mpfr_cmp(a.get(), b.get()); }

int compare(const Real& a, const Rational& q) noexcept { return mpfr_cmp_q(a.get(), q.get_mpq_t()); }

const Real& min(const Real& a, const Real& b) noexcept { return compare(a, b) <= 0 ? a : b; }
const Real& max(const Real& a, const Real& b) noexcept { return compare(a, b) >= 0 ? a : b; }

double log2_abs(const Real& a) {
  if (a.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, a.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

double log2_abs(const Rational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(en - ed);
}

} // namespace certgamma
