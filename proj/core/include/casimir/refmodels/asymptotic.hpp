#pragma once

#include <array>
#include <cstdint>

namespace casimir::refmodels {

struct Rational {
  std::int64_t num;
  std::int64_t den;
  constexpr double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr int kSeriesTerms = 6;

/// b_0..b_5 of the equal-radius large-separation series.
inline constexpr std::array<Rational, kSeriesTerms> kEqualCoefficients{{
    {-1, 4}, {-1, 4}, {-77, 48}, {-25, 16}, {-29837, 2880}, {-6491, 1152}}};

/// b̃_n(η) = -(Σ_p c_p η^p) / d for radius ratio η = r2 / r1.
struct RatioPolynomial {
  std::array<std::int64_t, 7> c;
  std::int64_t d;
  double operator()(double eta) const noexcept;
  /// -(Σ_p c_p) / d, reduced.
  Rational at_one() const noexcept;
};

inline constexpr std::array<RatioPolynomial, kSeriesTerms> kUnequalCoefficients{{
    {{0, 1, 0, 0, 0, 0, 0}, 4},
    {{0, 1, 1, 0, 0, 0, 0}, 8},
    {{0, 34, 9, 34, 0, 0, 0}, 48},
    {{0, 2, 23, 23, 2, 0, 0}, 32},
    {{0, 8352, 1995, 38980, 1995, 8352, 0}, 5760},
    {{0, -1344, 5478, 2357, 2357, 5478, -1344}, 2304}}};

/// True when b̃_n(1) equals b_n as a rational number.
bool unequal_matches_equal(int n);

/// Negative normalized energy of two spheres of radius r at gap z from the
/// truncated series in r / l, l = 2r + z. `terms` in [1, 6].
double asymptotic_equal(double r, double z, int terms = kSeriesTerms);

/// Same for radii r1, r2 with l = r1 + r2 + z, expanded in r1 / l.
double asymptotic_unequal(double r1, double r2, double z, int terms = kSeriesTerms);

/// C e^{-2 Z k}.
double decay_bound(double c, double z, double k);

}  // namespace casimir::refmodels
