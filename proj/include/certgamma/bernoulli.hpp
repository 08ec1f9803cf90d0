#ifndef CERTGAMMA_BERNOULLI_HPP
#define CERTGAMMA_BERNOULLI_HPP

#include "certgamma/rational.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace certgamma {

/// Exact Bernoulli polynomial B_n(t), coefficients in ascending powers of t.
class BernoulliPolynomial {
public:
  BernoulliPolynomial(unsigned degree, std::vector<Rational> coefficients);

  unsigned degree() const noexcept { return degree_; }
  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }

  Rational operator()(const Rational& t) const;
  /// Antiderivative vanishing at 0, as a coefficient vector of length n + 2.
  std::vector<Rational> antiderivative() const;
  /// Sum of |coefficients|: bounds |B_n(t)| for t in [-1, 1].
  Rational coefficient_abs_sum() const;

private:
  unsigned degree_;
  std::vector<Rational> coefficients_;
};

/// B_n with B_1 = -1/2, from sum_{k=0}^{n} C(n+1, k) B_k = 0. Memoized.
Rational bernoulli_number(unsigned n);
/// B_0, ..., B_n in one call.
std::vector<Rational> bernoulli_numbers(unsigned n);

BernoulliPolynomial bernoulli_poly(unsigned n);
/// Exact B_n(t) for any rational t.
Rational eval_poly(unsigned n, const Rational& t);

/// Certified isolating interval for the root of B_M on [0, 1/2].
struct RootBracket {
  Rational lo;
  Rational hi;
};

/// `index` must be even and at least 2; throws DomainError otherwise.
/// Bisection on exact signs until hi - lo <= tolerance.
RootBracket lambda0(unsigned index, const Rational& tolerance = pow2(-64));

enum class BoundDirection { LowerBound, UpperBound, Invalid };

std::string_view to_string(BoundDirection d) noexcept;

/// Direction in which the digamma truncation F_N(lambda; .) bounds psi on
/// (lambda, inf), or Invalid when (N, lambda) falls outside the validity
/// region. The comparison of lambda against the root of B_N (N even) or
/// B_{N+1} (N odd) is made by the exact sign of that polynomial at lambda.
/// Throws DomainError for N < 1 or lambda outside [0, 1/2].
BoundDirection validity(unsigned order, const Rational& lambda);

/// Human-readable reason (order, lambda) is Invalid; empty when valid.
std::string validity_diagnostic(unsigned order, const Rational& lambda);

/// Reads "n: num/den" lines into the memo cache. Returns entries accepted.
std::size_t load_bernoulli_cache(const std::filesystem::path& file);
/// Writes the memo cache as "n: num/den" lines.
void save_bernoulli_cache(const std::filesystem::path& file);

} // namespace certgamma

#endif // CERTGAMMA_BERNOULLI_HPP
