#include "certgamma/expansions.hpp"

#include "certgamma/bernoulli.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>

namespace certgamma {

namespace {

class ValueCache {
public:
  std::vector<Rational> get(const Rational& lambda, unsigned n) {
    const std::string key = to_fraction_string(lambda);
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(key); it != values_.end() && it->second.size() > n) {
        return {it->second.begin(), it->second.begin() + n + 1};
      }
    }
    std::vector<Rational> fresh;
    fresh.reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) fresh.push_back(eval_poly(k, lambda));

    std::unique_lock lock(mutex_);
    auto& slot = values_[key];
    if (slot.size() < fresh.size()) slot = fresh;
    return fresh;
  }

private:
  std::shared_mutex mutex_;
  std::map<std::string, std::vector<Rational>> values_;
};

ValueCache& value_cache() {
  static ValueCache cache;
  return cache;
}

// Interval images of exact series coefficients, keyed by
// (lambda, kind, precision). kind = -1 for the F family, d >= 0 for the
// d-th derivative of the L family. Index n holds the n-th coefficient.
class IntervalCache {
public:
  using Key = std::tuple<std::string, int, Precision>;

  template <typename MakeCoefficient>
  std::vector<Enclosure> get(const Rational& lambda, int kind, Precision prec, unsigned n,
                             MakeCoefficient make) {
    Key key{to_fraction_string(lambda), kind, prec};
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end() && it->second.size() > n) {
        return {it->second.begin(), it->second.begin() + n + 1};
      }
    }
    std::vector<Rational> b = bernoulli_values(lambda, n);
    std::vector<Enclosure> fresh;
    fresh.reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
      fresh.push_back(Enclosure::from_rational(make(k, b[k]), prec));
    }
    std::unique_lock lock(mutex_);
    auto& slot = entries_[key];
    if (slot.size() < fresh.size()) slot = fresh;
    return fresh;
  }

private:
  std::shared_mutex mutex_;
  std::map<Key, std::vector<Enclosure>> entries_;
};

IntervalCache& interval_cache() {
  static IntervalCache cache;
  return cache;
}

Integer rising_factorial(unsigned base, unsigned count) {
  Integer r(1);
  for (unsigned i = 0; i < count; ++i) r *= base + i;
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// (-1)^n B_n(lambda)/(n(n-1)) times the factor (-1)^d (n-1)_d picked up by
// differentiating u^{1-n} d times.
Rational coefficient_from_value(const Rational& b, unsigned n, unsigned d) {
  Rational c = b / (static_cast<unsigned long>(n) * (n - 1));
  c *= rising_factorial(n - 1, d);
  if ((n + d) % 2 == 1) c = -c;
  c.canonicalize();
  return c;
}

void require_above_lambda(const Enclosure& x, const Rational& lambda) {
  if (compare(x.lo(), lambda) <= 0) {
    throw DomainError("x must exceed λ = " + to_fraction_string(lambda) + ", got x ∈ " + x.to_string(12));
  }
}

// sum_{k=0}^{len-1} coeffs[first + k] v^k by Horner, highest power first.
Enclosure horner(const std::vector<Enclosure>& coeffs, unsigned first, unsigned last, const Enclosure& v) {
  Enclosure acc = coeffs[last];
  for (unsigned n = last; n-- > first;) {
    acc = acc * v + coeffs[n];
  }
  return acc;
}

Enclosure lift(const Enclosure& x, Precision prec) {
  if (x.precision() >= prec) return x;
  // Widening the endpoints to more bits is exact.
  Real lo(prec);
  Real hi(prec);
  mpfr_set(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure derivative_of_L(const TruncationSpec& spec, unsigned d, const Enclosure& x_in, Precision prec) {
  require_above_lambda(x_in, spec.lambda);
  const Enclosure x = lift(x_in, prec);
  const Enclosure u = x - Enclosure::from_rational(spec.lambda, prec);
  const Enclosure v = reciprocal(u);
  const Rational shift = spec.lambda - Rational(1, 2);
  const Enclosure shift_e = Enclosure::from_rational(shift, prec);

  Enclosure core = Enclosure::from_integer(0, prec);
  if (d == 0) {
    core = (u + shift_e) * log(u) - u + log_sqrt_2pi(prec);
  } else if (d == 1) {
    core = log(u) + shift_e * v;
  } else {
    // d^d/dx^d of u log u - u + (lambda - 1/2) log u.
    Rational a = factorial(d - 2);
    if (d % 2 == 1) a = -a;
    Rational b = shift * factorial(d - 1);
    if ((d - 1) % 2 == 1) b = -b;
    core = Enclosure::from_rational(a, prec) * pow(v, d - 1) + Enclosure::from_rational(b, prec) * pow(v, d);
  }

  if (spec.order < 2) return core;

  std::vector<Enclosure> coeffs = interval_cache().get(
      spec.lambda, static_cast<int>(d), prec, spec.order, [d](unsigned n, const Rational& b) {
        return n < 2 ? Rational(0) : coefficient_from_value(b, n, d);
      });
  Enclosure sum = horner(coeffs, 2, spec.order, v) * pow(v, d + 1);
  return core + sum;
}

} // namespace

TruncationSpec::TruncationSpec(Rational lambda_, unsigned order_) : lambda(std::move(lambda_)), order(order_) {
  if (lambda < 0 || lambda > Rational(1, 2)) {
    throw DomainError("λ = " + to_fraction_string(lambda) + " outside [0, 1/2]");
  }
  if (order < 1) {
    throw DomainError("truncation order N must be >= 1");
  }
}

std::vector<Rational> bernoulli_values(const Rational& lambda, unsigned n) { return value_cache().get(lambda, n); }

Rational term_coefficient(const Rational& lambda, unsigned n, unsigned derivative) {
  if (n < 2) throw DomainError("term_coefficient needs n >= 2");
  return coefficient_from_value(bernoulli_values(lambda, n)[n], n, derivative);
}

Enclosure eval_F(const TruncationSpec& spec, const Enclosure& x_in, Precision prec) {
  require_above_lambda(x_in, spec.lambda);
  const Enclosure x = lift(x_in, prec);
  const Enclosure u = x - Enclosure::from_rational(spec.lambda, prec);
  const Enclosure v = reciprocal(u);

  std::vector<Enclosure> coeffs =
      interval_cache().get(spec.lambda, -1, prec, spec.order, [](unsigned n, const Rational& b) {
        if (n == 0) return Rational(0);
        Rational a = b / n;
        if (n % 2 == 1) a = -a;
        return a;
      });
  Enclosure sum = horner(coeffs, 1, spec.order, v) * v;
  return log(u) - sum;
}

Enclosure eval_L(const TruncationSpec& spec, const Enclosure& x, Precision prec) {
  return derivative_of_L(spec, 0, x, prec);
}

Enclosure eval_L_derivative(const TruncationSpec& spec, unsigned m, const Enclosure& x, Precision prec) {
  if (m < 1) throw DomainError("derivative order must be >= 1; use eval_L for m = 0");
  return derivative_of_L(spec, m, x, prec);
}

Enclosure eval_Gamma_N(unsigned n, const Enclosure& x, Precision prec) {
  if (n < 1) throw DomainError("Gamma_N needs N >= 1");
  if (compare(x.lo(), Rational(1, 2)) <= 0) {
    throw DomainError("Gamma_N needs x > 1/2, got x ∈ " + x.to_string(12));
  }
  return exp(eval_L(TruncationSpec(Rational(1, 2), 2 * n), x, prec));
}

Real first_omitted_term(const TruncationSpec& spec, const Enclosure& x_in, Family family) {
  require_above_lambda(x_in, spec.lambda);
  const unsigned next = spec.order + 1;
  const Precision prec = std::max<Precision>(x_in.precision(), 64);
  const Enclosure x = lift(x_in, prec);
  const Rational b = abs(bernoulli_values(spec.lambda, next)[next]);
  if (b == 0) return Real(prec);

  const Enclosure u = x - Enclosure::from_rational(spec.lambda, prec);
  Rational scale = family == Family::Psi ? Rational(b / next) : Rational(b / (static_cast<unsigned long>(next) * spec.order));
  const unsigned power = family == Family::Psi ? next : spec.order;
  Enclosure term = Enclosure::from_rational(scale, prec) / pow(u, power);
  return term.hi();
}

} // namespace certgamma
