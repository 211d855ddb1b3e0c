#include "casimir/refmodels/asymptotic.hpp"

#include "casimir/errors.hpp"

#include <cmath>
#include <string>
#include <numbers>
#include <numeric>

namespace casimir::refmodels {

namespace {

void check_terms(int terms) {
  if (terms < 1 || terms > kSeriesTerms) throw ConfigError("series terms must lie in [1, 6]");
}

void check_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

double RatioPolynomial::operator()(double eta) const noexcept {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * eta + static_cast<double>(*it);
  return -acc / static_cast<double>(d);
}

Rational RatioPolynomial::at_one() const noexcept {
  const std::int64_t sum = std::accumulate(c.begin(), c.end(), std::int64_t{0});
  const std::int64_t g = std::gcd(sum, d);
  return {-sum / g, d / g};
}

bool unequal_matches_equal(int n) {
  if (n < 0 || n >= kSeriesTerms) throw ConfigError("coefficient index out of range");
  const Rational a = kUnequalCoefficients[static_cast<std::size_t>(n)].at_one();
  const Rational b = kEqualCoefficients[static_cast<std::size_t>(n)];
  return a.num * b.den == b.num * a.den;
}

double asymptotic_equal(double r, double z, int terms) {
  check_positive(r, "radius");
  check_positive(z, "gap");
  check_terms(terms);
  const double l = 2.0 * r + z;
  const double x = r / l;
  double sum = 0.0;
  double power = x * x;
  for (int n = 0; n < terms; ++n) {
    sum -= kEqualCoefficients[static_cast<std::size_t>(n)].value() * power;
    power *= x;
  }
  return sum / (std::numbers::pi * l);
}

double asymptotic_unequal(double r1, double r2, double z, int terms) {
  check_positive(r1, "radius r1");
  check_positive(r2, "radius r2");
  check_positive(z, "gap");
  check_terms(terms);
  const double l = r1 + r2 + z;
  const double eta = r2 / r1;
  const double x = r1 / l;
  double sum = 0.0;
  double power = x * x;
  for (int n = 0; n < terms; ++n) {
    sum -= kUnequalCoefficients[static_cast<std::size_t>(n)](eta) * power;
    power *= x;
  }
  return sum / (std::numbers::pi * l);
}

double decay_bound(double c, double z, double k) {
  check_positive(c, "amplitude");
  return c * std::exp(-2.0 * z * k);
}

}  // namespace casimir::refmodels
