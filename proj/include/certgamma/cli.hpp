#ifndef CERTGAMMA_CLI_HPP
#define CERTGAMMA_CLI_HPP

#include "certgamma/engine.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace certgamma {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitDomain = 2,
  kExitUnreachable = 3,
};

/// One evaluation result as printed by `eval`.
struct OutputRecord {
  std::string function;
  std::string x;
  std::string lo; ///< rounded down when printed
  std::string hi; ///< rounded up when printed
  std::string width;
  Plan plan;
  double elapsed_ms = 0.0;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

nlohmann::ordered_json plan_json(const Plan& plan);

/// Significant digits needed so the printed endpoints lose at most about
/// eps / 1000 against the enclosure.
int print_digits(const Enclosure& value, const Rational& eps);

OutputRecord make_record(const Query& query, const Evaluation& evaluation, double elapsed_ms);

/// Exact decimal when the denominator divides a power of ten, p/q otherwise.
std::string exact_text(const Rational& q);

/// Full command line: `eval`, `plan`, `verify`, `table`, `bernoulli`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace certgamma

#endif // CERTGAMMA_CLI_HPP
