#ifndef CERTGAMMA_ENGINE_HPP
#define CERTGAMMA_ENGINE_HPP

#include "certgamma/bernoulli.hpp"
#include "certgamma/enclosure.hpp"
#include "certgamma/expansions.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace certgamma {

enum class Function { Psi, LogGamma, Gamma };

/// psi^(m), log Gamma or Gamma.
struct Target {
  Function function = Function::Psi;
  unsigned order = 0; ///< m for Function::Psi, ignored otherwise.

  static Target psi(unsigned m = 0) { return {Function::Psi, m}; }
  static Target log_gamma() { return {Function::LogGamma, 0}; }
  static Target gamma() { return {Function::Gamma, 0}; }

  /// Order of the derivative of log Gamma this target is: 0 for log Gamma
  /// and Gamma, m + 1 for psi^(m).
  unsigned log_gamma_derivative() const noexcept {
    return function == Function::Psi ? order + 1 : 0;
  }
  std::string name() const;
};

struct Query {
  Target target;
  Rational x;
  Rational eps; ///< absolute tolerance, > 0
  std::optional<Rational> lambda;
  std::optional<unsigned> truncation; ///< forces the first member of the N pair
  std::optional<unsigned long> shift; ///< forces K
  std::optional<Precision> precision;
};

/// Evaluation recipe: bracket target(x + K) between two truncations of
/// opposite bound direction, then shift back by the functional equation.
struct Plan {
  Rational lambda;
  unsigned n_lower = 1;
  unsigned n_upper = 1;
  unsigned long shift = 0;
  Precision precision = 64;
  /// Nonzero series terms in the shorter of the two truncations.
  unsigned series_terms = 0;
  /// Gamma only: absolute tolerance imposed on the log Gamma enclosure.
  std::optional<Rational> log_domain_eps;
};

struct Evaluation {
  Enclosure value;
  Plan plan;
  unsigned escalations = 0;
};

/// The (N, lambda) pair violates the validity hypotheses.
class InvalidTruncation : public DomainError {
public:
  using DomainError::DomainError;
};

/// The escalation cap was reached before the width met the tolerance.
class UnreachableTolerance : public std::runtime_error {
public:
  UnreachableTolerance(const std::string& what, Evaluation best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const Evaluation& best() const noexcept { return best_; }

private:
  Evaluation best_;
};

struct OneSidedBound {
  BoundDirection direction;
  Real value;
};

/// Correction C with target(x) = target(x + K) - C.
Enclosure shift_sum(const Target& target, const Enclosure& x, unsigned long shift, Precision prec);

/// Direction in which the m-th derivative of L_N(lambda; .) bounds the m-th
/// derivative of log Gamma: Lower iff (-1)^(ceil(N/2) + m) = +1, provided
/// (N, lambda) passes validity(); Invalid otherwise.
BoundDirection derivative_direction(unsigned order, const Rational& lambda, unsigned m);

/// Certified one-sided bound on psi(x) from F_N(lambda; x).
/// Throws InvalidTruncation when validity() rejects the spec.
OneSidedBound bound_psi_side(const TruncationSpec& spec, const Enclosure& x, Precision prec);

/// Certified one-sided bound on (log Gamma)^(m)(x) from the m-th derivative
/// of L_N(lambda; .); m = 0 bounds log Gamma itself.
OneSidedBound bound_derivative_side(const TruncationSpec& spec, unsigned m, const Enclosure& x, Precision prec);

/// Number of nonzero series terms in the truncation of order N of the
/// expansion for the d-th derivative of log Gamma.
unsigned nonzero_terms(const Rational& lambda, unsigned order, unsigned derivative);

/// The plan enclose() starts from. Throws DomainError / InvalidTruncation.
Plan plan(const Query& query);

/// Enclosure of the target at x with width <= eps. Throws DomainError,
/// InvalidTruncation or UnreachableTolerance.
Evaluation enclose(const Query& query);

} // namespace certgamma

#endif // CERTGAMMA_ENGINE_HPP
