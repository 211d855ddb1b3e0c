#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace casimir::solvers {

/// Generalized eigenpairs of (V, Ṽ), ordered by descending |log λ|.
struct EigenPairSet {
  Eigen::VectorXd values;          // λ_i > 0
  Eigen::VectorXd logs;            // log λ_i, computed without cancellation near 1
  Eigen::MatrixXd vectors;         // columns x_i with x_i^T Ṽ x_i = 1
  Eigen::VectorXd residual_norms;  // ||V x_i - λ_i Ṽ x_i||_2

  Eigen::Index size() const noexcept { return values.size(); }
  /// Reorders all members by descending |log λ|.
  void sort_by_magnitude();
  /// Pairs with |log λ| > 10^{-s_exp}, order preserved.
  EigenPairSet above_threshold(int s_exp) const;
};

/// Σ log λ_i over |log λ_i| > 10^{-s_exp}.
double xi_from_pairs(const EigenPairSet& pairs, int s_exp);
double xi_from_pairs(std::span<const double> values, int s_exp);

enum class Method { dense, arnoldi, inverse_free };

std::string_view method_name(Method method);
/// Accepts "dense", "arnoldi", "inverse_free"; throws ConfigError otherwise.
Method parse_method(std::string_view name);

/// One wavenumber's result.
struct SolverReport {
  double k = 0.0;
  Method method = Method::dense;
  bool recycled = false;      // solved from a recycled basis (not the base method)
  Eigen::Index recycled_count = 0;  // s, the size of the inherited basis, when recycled
  double xi = 0.0;
  EigenPairSet retained;      // pairs passing the threshold (empty for dense)
  std::uint64_t matvecs = 0;
  Eigen::Index subspace_dim = 0;
  int s_exp = 0;
  std::uint64_t seed = 0;
  bool fallback = false;      // dense: factorization fell back to pivoted LU
};

}  // namespace casimir::solvers
