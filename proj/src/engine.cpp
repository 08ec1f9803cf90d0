#include "certgamma/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace certgamma {

namespace {

// Shifts up to this size are preferred; beyond it the planner adds series
// terms instead.
constexpr unsigned long kShiftBudget = 128;
constexpr unsigned long kMaxShift = 1ul << 22;
constexpr unsigned kMaxTruncation = 1400;
constexpr unsigned kMaxEscalations = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(const Rational& q) { return q.get_d(); }

double log2_rising(unsigned base, unsigned count) {
  if (count == 0) return 0.0;
  return (std::lgamma(static_cast<double>(base + count)) - std::lgamma(static_cast<double>(base))) / std::log(2.0);
}

/// Valid truncation orders and their directions for one (lambda, d).
class PairFinder {
public:
  PairFinder(Rational lambda, unsigned derivative) : lambda_(std::move(lambda)), derivative_(derivative) {}

  BoundDirection direction(unsigned order) {
    auto it = cache_.find(order);
    if (it != cache_.end()) return it->second;
    BoundDirection d = derivative_direction(order, lambda_, derivative_);
    cache_.emplace(order, d);
    return d;
  }

  std::optional<unsigned> next_valid(unsigned after) {
    for (unsigned n = after + 1; n <= kMaxTruncation; ++n) {
      if (direction(n) != BoundDirection::Invalid) return n;
    }
    return std::nullopt;
  }

  std::optional<unsigned> partner(unsigned order) {
    const BoundDirection d = direction(order);
    for (auto n = next_valid(order); n; n = next_valid(*n)) {
      if (direction(*n) != d) return n;
    }
    return std::nullopt;
  }

private:
  Rational lambda_;
  unsigned derivative_;
  std::map<unsigned, BoundDirection> cache_;
};

/// log2 magnitudes of series terms, for planning only.
class TermScale {
public:
  TermScale(Rational lambda, unsigned derivative) : lambda_(std::move(lambda)), derivative_(derivative) {}

  double log2_coefficient(unsigned n) {
    if (n >= log2_coeff_.size()) grow(n);
    return log2_coeff_[n];
  }

  /// log2 of sum_{n=a+1}^{b} |term_n| at log2(x - lambda) = log2_u.
  double log2_gap(unsigned a, unsigned b, double log2_u) {
    std::vector<double> logs;
    for (unsigned n = std::max(a + 1, 2u); n <= b; ++n) {
      const double c = log2_coefficient(n);
      if (c == -kInf) continue;
      logs.push_back(c - static_cast<double>(n + derivative_ - 1) * log2_u);
    }
    if (logs.empty()) return -kInf;
    const double top = *std::max_element(logs.begin(), logs.end());
    double s = 0.0;
    for (double l : logs) s += std::exp2(l - top);
    return top + std::log2(s);
  }

private:
  void grow(unsigned n) {
    const unsigned target = std::max<unsigned>(n, 2 * static_cast<unsigned>(log2_coeff_.size()) + 16);
    std::vector<Rational> values = bernoulli_values(lambda_, target);
    log2_coeff_.assign(target + 1, -kInf);
    for (unsigned k = 2; k <= target; ++k) {
      if (values[k] == 0) continue;
      log2_coeff_[k] = log2_abs(values[k]) - std::log2(static_cast<double>(k)) -
                       std::log2(static_cast<double>(k - 1)) + log2_rising(k - 1, derivative_);
    }
  }

  Rational lambda_;
  unsigned derivative_;
  std::vector<double> log2_coeff_;
};

unsigned long minimum_shift(const Rational& x, const Rational& lambda) {
  // Smallest K with x + K > lambda + 1.
  Rational deficit = lambda + 1 - x;
  if (deficit < 0) return 0;
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), deficit.get_num_mpz_t(), deficit.get_den_mpz_t());
  return k.get_ui() + 1;
}

std::optional<unsigned long> required_shift(TermScale& scale, unsigned a, unsigned b, double x, double lambda,
                                            double target_log2, unsigned long k_min) {
  auto ok = [&](unsigned long k) {
    return scale.log2_gap(a, b, std::log2(x + static_cast<double>(k) - lambda)) < target_log2;
  };
  if (ok(k_min)) return k_min;
  unsigned long hi = std::max<unsigned long>(k_min, 1);
  while (!ok(hi)) {
    if (hi >= kMaxShift) return std::nullopt;
    hi = std::min(hi * 2, kMaxShift);
  }
  unsigned long lo = std::max<unsigned long>(k_min, hi / 2);
  while (lo < hi) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

Precision estimate_precision(unsigned derivative, double x, unsigned long shift, unsigned n_max, double log2_eps) {
  const double y = x + static_cast<double>(shift);
  double log2_mag = 0.0;
  if (derivative == 0) {
    log2_mag = std::log2(1.0 + y * (std::fabs(std::log(y)) + 1.0));
  } else if (derivative == 1) {
    log2_mag = std::log2(2.0 + std::fabs(std::log(y)) + 1.0 / x + std::log1p(static_cast<double>(shift) / x));
  } else {
    const double m = derivative - 1;
    log2_mag = std::lgamma(m + 1.0) / std::log(2.0) + std::max(0.0, -(m + 1.0) * std::log2(x)) + 2.0;
  }
  const double bits = -log2_eps + std::max(0.0, log2_mag) + std::log2(static_cast<double>(shift + n_max) + 8.0) + 32.0;
  return std::max<Precision>(64, static_cast<Precision>(std::ceil(bits)));
}

void validate_query(const Query& q) {
  if (q.x <= 0) {
    throw DomainError("x must be positive, got " + to_fraction_string(q.x));
  }
  if (q.eps <= 0) {
    throw DomainError("tolerance eps must be positive");
  }
  if (q.lambda && (*q.lambda < 0 || *q.lambda > Rational(1, 2))) {
    throw DomainError("λ = " + to_fraction_string(*q.lambda) + " outside [0, 1/2]");
  }
  if (q.precision && *q.precision < MPFR_PREC_MIN) {
    throw DomainError("precision too small");
  }
}

struct Bracketed {
  BoundDirection direction;
  Enclosure evaluation;
};

Bracketed evaluate_truncation(const TruncationSpec& spec, unsigned derivative, const Enclosure& x, Precision prec,
                              bool psi_path) {
  if (psi_path) {
    const BoundDirection d = validity(spec.order, spec.lambda);
    if (d == BoundDirection::Invalid) {
      throw InvalidTruncation(validity_diagnostic(spec.order, spec.lambda));
    }
    return {d, eval_F(spec, x, prec)};
  }
  const BoundDirection d = derivative_direction(spec.order, spec.lambda, derivative);
  if (d == BoundDirection::Invalid) {
    throw InvalidTruncation(validity_diagnostic(spec.order, spec.lambda));
  }
  Enclosure e = derivative == 0 ? eval_L(spec, x, prec) : eval_L_derivative(spec, derivative, x, prec);
  return {d, std::move(e)};
}

Real endpoint(const Bracketed& b) {
  return b.direction == BoundDirection::LowerBound ? b.evaluation.lo() : b.evaluation.hi();
}

struct Attempt {
  Enclosure value;
  Real rounding;
};

Attempt attempt(const Target& target, const Rational& x, const Plan& p) {
  const unsigned d = target.log_gamma_derivative();
  const Precision prec = p.precision;
  const Enclosure y = Enclosure::from_rational(x + p.shift, prec);
  const bool psi_path = d == 1;

  Bracketed lower = evaluate_truncation(TruncationSpec(p.lambda, p.n_lower), d, y, prec, psi_path);
  Bracketed upper = evaluate_truncation(TruncationSpec(p.lambda, p.n_upper), d, y, prec, psi_path);
  if (lower.direction != BoundDirection::LowerBound || upper.direction != BoundDirection::UpperBound) {
    throw std::logic_error("plan pair does not bracket the target");
  }
  const Real lo = endpoint(lower);
  const Real hi = endpoint(upper);
  if (lo > hi) {
    throw std::logic_error("certified bounds cross: " + lo.to_string(30) + " > " + hi.to_string(30));
  }

  const Enclosure correction = shift_sum(target, Enclosure::from_rational(x, prec), p.shift, prec);
  Enclosure value(sub(lo, correction.hi(), Round::Down), sub(hi, correction.lo(), Round::Up));
  Real rounding = add(add(lower.evaluation.width(), upper.evaluation.width(), Round::Up), correction.width(), Round::Up);
  return {std::move(value), std::move(rounding)};
}

Plan plan_direct(const Query& q) {
  validate_query(q);
  const unsigned d = q.target.log_gamma_derivative();
  Plan p;
  p.lambda = q.lambda.value_or(Rational(1, 2));

  if (q.shift && q.x + *q.shift <= p.lambda) {
    throw DomainError("x + K = " + to_fraction_string(q.x + *q.shift) + " must exceed λ = " +
                      to_fraction_string(p.lambda));
  }

  const unsigned long k_min = q.shift ? *q.shift : minimum_shift(q.x, p.lambda);
  const double x = to_double(q.x);
  const double lambda = to_double(p.lambda);
  const double target_log2 = log2_abs(q.eps) - 2.0; // eps / 4
  PairFinder finder(p.lambda, d);
  TermScale scale(p.lambda, d);

  auto assign_pair = [&](unsigned a, unsigned b) {
    if (finder.direction(a) == BoundDirection::LowerBound) {
      p.n_lower = a;
      p.n_upper = b;
    } else {
      p.n_lower = b;
      p.n_upper = a;
    }
    p.series_terms = nonzero_terms(p.lambda, std::min(a, b), d);
  };

  if (q.truncation) {
    const unsigned a = *q.truncation;
    if (a < 1) throw DomainError("truncation order N must be >= 1");
    if (finder.direction(a) == BoundDirection::Invalid) {
      throw InvalidTruncation(validity_diagnostic(a, p.lambda));
    }
    auto b = finder.partner(a);
    if (!b) throw DomainError("no valid partner truncation above N = " + std::to_string(a));
    assign_pair(a, *b);
    p.shift = q.shift ? *q.shift
                      : required_shift(scale, a, *b, x, lambda, target_log2, k_min).value_or(kMaxShift);
  } else if (q.shift) {
    const double log2_u = std::log2(x + static_cast<double>(*q.shift) - lambda);
    std::optional<std::pair<unsigned, unsigned>> best;
    double best_gap = kInf;
    double previous = kInf;
    int worsening = 0;
    for (auto a = finder.next_valid(0); a; a = finder.next_valid(*a)) {
      auto b = finder.partner(*a);
      if (!b) break;
      const double gap = scale.log2_gap(*a, *b, log2_u);
      if (gap < best_gap) {
        best_gap = gap;
        best = std::pair{*a, *b};
      }
      if (gap < target_log2) break;
      worsening = gap >= previous ? worsening + 1 : 0;
      if (worsening >= 4) break;
      previous = gap;
    }
    if (!best) throw DomainError("no valid truncation pair for λ = " + to_fraction_string(p.lambda));
    assign_pair(best->first, best->second);
    p.shift = *q.shift;
  } else {
    const unsigned long budget = std::max(kShiftBudget, k_min);
    const double log2_u_budget = std::log2(x + static_cast<double>(budget) - lambda);
    std::optional<std::pair<unsigned, unsigned>> best;
    double best_gap = kInf;
    double previous = kInf;
    int worsening = 0;
    bool within_budget = false;
    for (auto a = finder.next_valid(0); a; a = finder.next_valid(*a)) {
      auto b = finder.partner(*a);
      if (!b) break;
      const double gap = scale.log2_gap(*a, *b, log2_u_budget);
      if (gap < best_gap) {
        best_gap = gap;
        best = std::pair{*a, *b};
      }
      if (gap < target_log2) {
        within_budget = true;
        break;
      }
      worsening = gap >= previous ? worsening + 1 : 0;
      if (worsening >= 4) break;
      previous = gap;
    }
    if (!best) throw DomainError("no valid truncation pair for λ = " + to_fraction_string(p.lambda));
    assign_pair(best->first, best->second);
    auto k = required_shift(scale, best->first, best->second, x, lambda, target_log2, k_min);
    p.shift = k ? *k : kMaxShift;
    (void)within_budget;
  }

  p.precision = q.precision ? *q.precision
                            : estimate_precision(d, x, p.shift, std::max(p.n_lower, p.n_upper), log2_abs(q.eps));
  return p;
}

Rational log_domain_tolerance(const Rational& x, const Rational& eps) {
  // eps / (2 Gamma(x)) from a double estimate of log Gamma(x).
  const double lg = std::lgamma(to_double(x));
  Real scaled = Real::from_rational(eps, 64, Round::Down);
  Real factor = exp(Real::from_double(-lg - std::log(2.0), 64), Round::Down);
  return mul(scaled, factor, Round::Down).to_rational();
}

Evaluation run(const Query& q, Plan p) {
  const unsigned d = q.target.log_gamma_derivative();
  PairFinder finder(p.lambda, d);
  std::optional<Evaluation> best;
  const Rational half_eps = q.eps / 2;
  const unsigned long k_floor = std::max<unsigned long>(1, minimum_shift(q.x, p.lambda));

  for (unsigned escalation = 0; escalation <= kMaxEscalations; ++escalation) {
    Attempt a = attempt(q.target, q.x, p);
    const Real width = a.value.width();
    if (!best || width < best->value.width()) {
      best = Evaluation{a.value, p, escalation};
    }
    if (compare(width, q.eps) <= 0) {
      return Evaluation{std::move(a.value), p, escalation};
    }

    if (compare(a.rounding, half_eps) > 0) {
      if (q.precision) break;
      p.precision *= 2;
    } else if (!q.shift && p.shift < kMaxShift) {
      p.shift = std::min(kMaxShift, std::max(k_floor, 2 * p.shift));
    } else if (!q.truncation) {
      auto a_next = finder.next_valid(std::min(p.n_lower, p.n_upper));
      auto b_next = a_next ? finder.partner(*a_next) : std::nullopt;
      if (!b_next) break;
      if (finder.direction(*a_next) == BoundDirection::LowerBound) {
        p.n_lower = *a_next;
        p.n_upper = *b_next;
      } else {
        p.n_lower = *b_next;
        p.n_upper = *a_next;
      }
      p.series_terms = nonzero_terms(p.lambda, std::min(p.n_lower, p.n_upper), d);
    } else {
      break;
    }
  }
  std::ostringstream msg;
  msg << "unreachable tolerance: best width " << best->value.width().to_string(6, Round::Up) << " exceeds eps "
      << Real::from_rational(q.eps, 64, Round::Nearest).to_string(6) << " for " << q.target.name()
      << " at x = " << to_fraction_string(q.x);
  throw UnreachableTolerance(msg.str(), *best);
}

} // namespace

std::string Target::name() const {
  switch (function) {
  case Function::Psi: return order == 0 ? "psi" : "polygamma(" + std::to_string(order) + ")";
  case Function::LogGamma: return "loggamma";
  case Function::Gamma: return "gamma";
  }
  return "?";
}

Enclosure shift_sum(const Target& target, const Enclosure& x, unsigned long shift, Precision prec) {
  Enclosure total = Enclosure::from_integer(0, prec);
  const unsigned d = target.log_gamma_derivative();
  Rational scale(1);
  if (d >= 2) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), d - 1);
    scale = f;
    if ((d - 1) % 2 == 1) scale = -scale;
  }
  const Enclosure scale_e = Enclosure::from_rational(scale, prec);
  for (unsigned long j = 0; j < shift; ++j) {
    const Enclosure xj = x + Enclosure::from_rational(Rational(Integer(j)), prec);
    if (d == 0) {
      total += log(xj);
    } else if (d == 1) {
      total += reciprocal(xj);
    } else {
      total += scale_e / pow(xj, d);
    }
  }
  return total;
}

BoundDirection derivative_direction(unsigned order, const Rational& lambda, unsigned m) {
  if (validity(order, lambda) == BoundDirection::Invalid) return BoundDirection::Invalid;
  const unsigned ceil_half = (order + 1) / 2;
  return (ceil_half + m) % 2 == 0 ? BoundDirection::LowerBound : BoundDirection::UpperBound;
}

OneSidedBound bound_psi_side(const TruncationSpec& spec, const Enclosure& x, Precision prec) {
  Bracketed b = evaluate_truncation(spec, 1, x, prec, true);
  return {b.direction, endpoint(b)};
}

OneSidedBound bound_derivative_side(const TruncationSpec& spec, unsigned m, const Enclosure& x, Precision prec) {
  Bracketed b = evaluate_truncation(spec, m, x, prec, false);
  return {b.direction, endpoint(b)};
}

unsigned nonzero_terms(const Rational& lambda, unsigned order, unsigned derivative) {
  std::vector<Rational> values = bernoulli_values(lambda, order);
  unsigned count = 0;
  for (unsigned n = derivative == 0 ? 2 : 1; n <= order; ++n) {
    if (values[n] != 0) ++count;
  }
  return count;
}

Plan plan(const Query& q) {
  if (q.target.function != Function::Gamma) return plan_direct(q);
  validate_query(q);
  Query inner = q;
  inner.target = Target::log_gamma();
  inner.eps = log_domain_tolerance(q.x, q.eps);
  Plan p = plan_direct(inner);
  p.log_domain_eps = inner.eps;
  return p;
}

Evaluation enclose(const Query& q) {
  if (q.target.function != Function::Gamma) {
    return run(q, plan_direct(q));
  }

  validate_query(q);
  Query inner = q;
  inner.target = Target::log_gamma();
  inner.eps = log_domain_tolerance(q.x, q.eps);
  unsigned escalations = 0;
  std::optional<Evaluation> best;
  for (int round = 0; round < 8; ++round) {
    Evaluation log_result = run(inner, plan_direct(inner));
    escalations += log_result.escalations;
    Plan p = log_result.plan;
    p.log_domain_eps = inner.eps;
    Evaluation result{exp(log_result.value), p, escalations};
    if (compare(result.value.width(), q.eps) <= 0) return result;
    if (!best || result.value.width() < best->value.width()) best = result;
    inner.eps /= 4;
    ++escalations;
  }
  throw UnreachableTolerance("unreachable tolerance for gamma at x = " + to_fraction_string(q.x), *best);
}

} // namespace certgamma
