#ifndef CERTGAMMA_VERIFY_HPP
#define CERTGAMMA_VERIFY_HPP

#include "certgamma/bernoulli.hpp"
#include "certgamma/engine.hpp"
#include "certgamma/expansions.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace certgamma {

/// Simpson estimate with an error radius. The radius is an estimate with a
/// safety factor, not a certified bound.
struct QuadratureResult {
  Real estimate;
  Real radius;
  unsigned subdivisions = 0;

  Enclosure enclosure() const;
};

enum class Sign { Positive, Negative, Indeterminate };
std::string_view to_string(Sign s) noexcept;

struct SignReport {
  std::vector<Rational> grid;
  std::vector<Sign> signs;
  /// First adjacent pair of grid points with opposite certified signs.
  std::optional<std::pair<Rational, Rational>> first_change;

  bool all(Sign s) const;
};

enum class Status { Pass, Fail, Inconclusive };
std::string_view to_string(Status s) noexcept;

struct CheckResult {
  Status status = Status::Fail;
  std::string detail;

  bool passed() const noexcept { return status == Status::Pass; }
};

/// One line of the verification report.
struct CheckRecord {
  std::string check;
  nlohmann::ordered_json params;
  Status status = Status::Fail;
  std::string detail;

  nlohmann::ordered_json to_json() const;
};

/// Integral of B_N({t}) / (x + t)^{N+1} over [-lambda, 1 - lambda], with
/// `subdivisions` Simpson panels on each polynomial piece.
QuadratureResult quadrature_R_N(const TruncationSpec& spec, const Rational& x, unsigned subdivisions,
                                Precision prec = 128);

/// F_N(lambda; x + 1) - F_N(lambda; x) - 1/x against the remainder integral.
CheckResult check_shift_identity(const TruncationSpec& spec, const Rational& x);

/// Sign of the remainder integral against the bound direction of the spec.
/// Retries with finer panels while the radius hides the sign.
CheckResult check_remainder_sign(const TruncationSpec& spec, const Rational& x);

/// psi(x) - F_N(lambda; x) from the engine against the sum of `periods`
/// remainder integrals plus a tail bound.
CheckResult check_tail_representation(const TruncationSpec& spec, const Rational& x, unsigned periods);

/// Entry m of the result reports the sign of
/// (-1)^(ceil(N/2) + m) ((log Gamma)^(m)(x) - L_N^(m)(lambda; x)) on the grid.
std::vector<SignReport> check_complete_monotonicity(const TruncationSpec& spec, unsigned m_max,
                                                    const std::vector<Rational>& grid);

/// Signs of psi(x) - F_N(lambda; x) on an ascending grid.
SignReport find_sign_change(const TruncationSpec& spec, const std::vector<Rational>& grid);

/// Gamma_{2N-1}(x) < Gamma(x) < Gamma_{2N}(x) at every grid point.
CheckResult gamma_sandwich_check(unsigned n, const std::vector<Rational>& grid);

/// [Gamma_{2N+1}, Gamma_{2N+2}] inside [Gamma_{2N-1}, Gamma_{2N}] at every grid point.
CheckResult gamma_sandwich_nesting(unsigned n, const std::vector<Rational>& grid);

/// psi(x + 1) - psi(y + 1) from the Weierstrass product series: a partial
/// sum of `terms` terms plus an integral-comparison tail.
Enclosure weierstrass_psi_diff(const Rational& x, const Rational& y, unsigned long terms, Precision prec = 128);

/// |psi(x) - log x| < 1/x and decreasing along the grid.
CheckResult check_psi_log_asymptote(const std::vector<Rational>& grid);

/// Named suites: bernoulli, signs, monotone, sandwich, oracle, all.
std::vector<CheckRecord> run_suite(const std::string& name);
const std::vector<std::string>& suite_names();

/// n points from a to b, evenly spaced in log x, as exact rationals.
std::vector<Rational> log_grid(double a, double b, unsigned n);

} // namespace certgamma

#endif // CERTGAMMA_VERIFY_HPP
