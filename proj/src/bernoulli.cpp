#include "certgamma/bernoulli.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace certgamma {

namespace {

class NumberTable {
public:
  NumberTable() { values_.emplace_back(1); }

  std::vector<Rational> prefix(unsigned n) {
    ensure(n);
    std::shared_lock lock(mutex_);
    return {values_.begin(), values_.begin() + n + 1};
  }

  Rational at(unsigned n) {
    ensure(n);
    std::shared_lock lock(mutex_);
    return values_[n];
  }

  std::size_t merge(std::map<unsigned, Rational>& loaded) {
    std::unique_lock lock(mutex_);
    std::size_t accepted = 0;
    for (auto it = loaded.find(static_cast<unsigned>(values_.size())); it != loaded.end();
         it = loaded.find(static_cast<unsigned>(values_.size()))) {
      values_.push_back(it->second);
      ++accepted;
    }
    return accepted;
  }

  std::vector<Rational> snapshot() {
    std::shared_lock lock(mutex_);
    return values_;
  }

private:
  void ensure(unsigned n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return;
    }
    std::unique_lock lock(mutex_);
    Integer coeff;
    for (unsigned m = static_cast<unsigned>(values_.size()); m <= n; ++m) {
      Rational sum(0);
      for (unsigned k = 0; k < m; ++k) {
        if (values_[k] == 0) continue;
        mpz_bin_uiui(coeff.get_mpz_t(), m + 1, k);
        sum += coeff * values_[k];
      }
      Rational b = -sum / (m + 1);
      b.canonicalize();
      values_.push_back(std::move(b));
    }
  }

  std::shared_mutex mutex_;
  std::vector<Rational> values_;
};

NumberTable& number_table() {
  static NumberTable table;
  return table;
}

class PolynomialCache {
public:
  BernoulliPolynomial get(unsigned n) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = polys_.find(n); it != polys_.end()) return it->second;
    }
    std::vector<Rational> numbers = bernoulli_numbers(n);
    std::vector<Rational> coeffs(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
      coeffs[j] = binomial(n, j) * numbers[n - j];
    }
    BernoulliPolynomial poly(n, std::move(coeffs));
    std::unique_lock lock(mutex_);
    return polys_.try_emplace(n, std::move(poly)).first->second;
  }

private:
  std::shared_mutex mutex_;
  std::unordered_map<unsigned, BernoulliPolynomial> polys_;
};

PolynomialCache& polynomial_cache() {
  static PolynomialCache cache;
  return cache;
}

int sign_of(const Rational& q) { return sgn(q); }

} // namespace

BernoulliPolynomial::BernoulliPolynomial(unsigned degree, std::vector<Rational> coefficients)
    : degree_(degree), coefficients_(std::move(coefficients)) {}

Rational BernoulliPolynomial::operator()(const Rational& t) const {
  Rational acc(0);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

std::vector<Rational> BernoulliPolynomial::antiderivative() const {
  std::vector<Rational> out(coefficients_.size() + 1);
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    out[j + 1] = coefficients_[j] / static_cast<unsigned long>(j + 1);
  }
  return out;
}

Rational BernoulliPolynomial::coefficient_abs_sum() const {
  Rational s(0);
  for (const auto& c : coefficients_) s += abs(c);
  return s;
}

Rational bernoulli_number(unsigned n) { return number_table().at(n); }

std::vector<Rational> bernoulli_numbers(unsigned n) { return number_table().prefix(n); }

BernoulliPolynomial bernoulli_poly(unsigned n) { return polynomial_cache().get(n); }

Rational eval_poly(unsigned n, const Rational& t) {
  // B_n(p/q) = q^{-n} sum_k C(n,k) B_k p^{n-k} q^k.
  std::vector<Rational> numbers = bernoulli_numbers(n);
  const Integer& p = t.get_num();
  const Integer& q = t.get_den();

  std::vector<Integer> p_pow(n + 1);
  p_pow[0] = 1;
  for (unsigned i = 1; i <= n; ++i) p_pow[i] = p_pow[i - 1] * p;

  Rational sum(0);
  Integer q_pow(1);
  Integer coeff;
  for (unsigned k = 0; k <= n; ++k) {
    if (numbers[k] != 0) {
      mpz_bin_uiui(coeff.get_mpz_t(), n, k);
      Integer scale = coeff * p_pow[n - k] * q_pow;
      sum += numbers[k] * scale;
    }
    q_pow *= q;
  }
  Integer q_n;
  mpz_pow_ui(q_n.get_mpz_t(), q.get_mpz_t(), n);
  sum /= q_n;
  sum.canonicalize();
  return sum;
}

RootBracket lambda0(unsigned index, const Rational& tolerance) {
  if (index < 2 || index % 2 != 0) {
    throw DomainError("root bracket needs an even index >= 2, got " + std::to_string(index));
  }
  if (tolerance <= 0) {
    throw DomainError("root bracket tolerance must be positive");
  }
  BernoulliPolynomial poly = bernoulli_poly(index);
  Rational lo(0);
  Rational hi(1, 2);
  const int sign_lo = sign_of(poly(lo));
  const int sign_hi = sign_of(poly(hi));
  if (sign_lo * sign_hi >= 0) {
    throw std::logic_error("B_" + std::to_string(index) + " has no sign change on [0, 1/2]");
  }

  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    const int s = sign_of(poly(mid));
    if (s == 0) {
      // Exact rational root: any bracket straddling it certifies it.
      Rational half = tolerance / 2;
      lo = std::max(lo, Rational(mid - half));
      hi = std::min(hi, Rational(mid + half));
      break;
    }
    if (s == sign_lo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return {lo, hi};
}

std::string_view to_string(BoundDirection d) noexcept {
  switch (d) {
  case BoundDirection::LowerBound: return "lower";
  case BoundDirection::UpperBound: return "upper";
  case BoundDirection::Invalid: return "invalid";
  }
  return "invalid";
}

namespace {

void check_validity_domain(unsigned order, const Rational& lambda) {
  if (order < 1) {
    throw DomainError("truncation order must be >= 1");
  }
  if (lambda < 0 || lambda > Rational(1, 2)) {
    throw DomainError("lambda = " + to_fraction_string(lambda) + " outside [0, 1/2]");
  }
}

// Relative position of lambda and the root of B_M on [0, 1/2], where
// M = N (N even) or N + 1 (N odd): -1 below, 0 at, +1 above.
int side_of_root(unsigned order, const Rational& lambda) {
  const unsigned index = order % 2 == 0 ? order : order + 1;
  const int at_zero = sign_of(bernoulli_number(index));
  const int at_lambda = sign_of(eval_poly(index, lambda));
  if (at_lambda == 0) return 0;
  return at_lambda == at_zero ? -1 : 1;
}

} // namespace

BoundDirection validity(unsigned order, const Rational& lambda) {
  check_validity_domain(order, lambda);
  const int side = side_of_root(order, lambda);
  switch (order % 4) {
  case 1: return side >= 0 ? BoundDirection::LowerBound : BoundDirection::Invalid;
  case 3: return side >= 0 ? BoundDirection::UpperBound : BoundDirection::Invalid;
  case 2: return side <= 0 ? BoundDirection::LowerBound : BoundDirection::Invalid;
  default: return side <= 0 ? BoundDirection::UpperBound : BoundDirection::Invalid;
  }
}

std::string validity_diagnostic(unsigned order, const Rational& lambda) {
  if (validity(order, lambda) != BoundDirection::Invalid) return {};
  const unsigned index = order % 2 == 0 ? order : order + 1;
  RootBracket root = lambda0(index, pow2(-40));
  std::ostringstream out;
  out << "invalid (N, λ): λ " << (order % 2 == 0 ? "exceeds" : "is below") << " λ₀"
      << " (N=" << order << ", λ=" << to_fraction_string(lambda) << ", λ₀ = root of B_" << index
      << " in [0, 1/2] ≈ " << to_decimal_string(root.lo, 8) << "; "
      << (order % 2 == 0 ? "even N requires λ <= λ₀" : "odd N requires λ >= λ₀") << ")";
  return out.str();
}

std::size_t load_bernoulli_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return 0;
  std::map<unsigned, Rational> loaded;
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    unsigned n = static_cast<unsigned>(std::stoul(line.substr(0, colon)));
    Rational value = parse_rational(line.substr(colon + 1));
    if (n >= 3 && n % 2 == 1 && value != 0) {
      throw DomainError("corrupt Bernoulli cache entry for n=" + std::to_string(n));
    }
    loaded.emplace(n, std::move(value));
  }
  return number_table().merge(loaded);
}

void save_bernoulli_cache(const std::filesystem::path& file) {
  std::vector<Rational> values = number_table().snapshot();
  std::ofstream out(file);
  for (std::size_t n = 0; n < values.size(); ++n) {
    out << n << ": " << to_fraction_string(values[n]) << '\n';
  }
}

} // namespace certgamma
