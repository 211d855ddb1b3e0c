#pragma once

#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/pencil.hpp"

#include <cstdint>

namespace casimir::solvers {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Unit vector with entries drawn uniformly from [-1, 1] by a 64-bit
/// Mersenne twister; identical on every platform for a given seed.
Eigen::VectorXd start_vector(Eigen::Index n, std::uint64_t seed = kDefaultSeed);

/// Modified Gram-Schmidt against the first `cols` columns of q, run twice.
/// Coefficients of both passes are summed into `coeffs` when given. Returns
/// the norm of w after orthogonalization; w is left unnormalized.
double orthogonalize(const Eigen::MatrixXd& q, Eigen::Index cols, Eigen::VectorXd& w,
                     Eigen::VectorXd* coeffs = nullptr);

/// Orthonormal basis of the column span of x, dropping columns whose norm
/// after orthogonalization falls below 1e-12 of their initial norm. Columns
/// of `against` (orthonormal) are projected out first.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& against = {});

/// Standard Arnoldi on M = V Ṽ^{-1}. Runs m - 1 steps (n steps when m >= n)
/// and returns the Ritz pairs of the square Hessenberg projection with
/// explicitly computed residuals. Stops early on (happy) breakdown.
EigenPairSet arnoldi_eigs(const Pencil& pencil, Eigen::Index m, const Eigen::VectorXd& start);

/// Inverse-free Krylov method: orthonormal basis Z of K_m(V - ρṼ, start),
/// projected pencil (Z^T (V - ρṼ) Z, Z^T Ṽ Z), eigenvalues shifted back by ρ.
/// Never inverts a full-size matrix.
EigenPairSet inverse_free_eigs(const Pencil& pencil, Eigen::Index m, double rho,
                               const Eigen::VectorXd& start);

}  // namespace casimir::solvers
