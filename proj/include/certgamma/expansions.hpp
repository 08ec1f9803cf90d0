#ifndef CERTGAMMA_EXPANSIONS_HPP
#define CERTGAMMA_EXPANSIONS_HPP

#include "certgamma/enclosure.hpp"
#include "certgamma/rational.hpp"

#include <vector>

namespace certgamma {

/// (lambda, N): one truncation of the expansions of psi and log Gamma in
/// inverse powers of (x - lambda).
struct TruncationSpec {
  TruncationSpec(Rational lambda, unsigned order);

  Rational lambda;
  unsigned order;
};

enum class Family { Psi, LogGamma };

/// B_0(lambda), ..., B_n(lambda), cached per lambda.
std::vector<Rational> bernoulli_values(const Rational& lambda, unsigned n);

/// Exact coefficient k such that the n-th series term of the d-th derivative
/// of L_N(lambda; .) is k (x - lambda)^{-(n + d - 1)}. Requires n >= 2.
Rational term_coefficient(const Rational& lambda, unsigned n, unsigned derivative);

/// F_N(lambda; x) = log(x - lambda) - sum_{n=1}^{N} (-1)^n B_n(lambda)/n (x - lambda)^{-n}.
/// Throws DomainError unless x > lambda.
Enclosure eval_F(const TruncationSpec& spec, const Enclosure& x, Precision prec);

/// L_N(lambda; x) = log sqrt(2 pi) + (x - 1/2) log(x - lambda) - (x - lambda)
///                  + sum_{n=2}^{N} (-1)^n B_n(lambda)/(n(n-1)) (x - lambda)^{1-n}.
Enclosure eval_L(const TruncationSpec& spec, const Enclosure& x, Precision prec);

/// m-th derivative of L_N(lambda; .) at x, m >= 1, from the termwise
/// closed form. For m = 1 this is F_N mathematically but shares no code
/// with eval_F.
Enclosure eval_L_derivative(const TruncationSpec& spec, unsigned m, const Enclosure& x, Precision prec);

/// Sonin approximant Gamma_N(x) = exp(L_{2N}(1/2; x)), x > 1/2.
Enclosure eval_Gamma_N(unsigned n, const Enclosure& x, Precision prec);

/// Upper bound on the magnitude of the first omitted term: the n = N + 1
/// term of F_N for Family::Psi, of L_N for Family::LogGamma. Zero when
/// B_{N+1}(lambda) vanishes. A planning heuristic, not a certificate.
Real first_omitted_term(const TruncationSpec& spec, const Enclosure& x, Family family);

} // namespace certgamma

#endif // CERTGAMMA_EXPANSIONS_HPP
