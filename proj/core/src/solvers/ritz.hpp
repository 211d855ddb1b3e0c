#pragma once

// Ritz extraction shared by the base Krylov methods and the recycled steps.

#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/pencil.hpp"

namespace casimir::solvers::detail {

struct Ritz {
  EigenPairSet pairs;          // unsorted
  Eigen::MatrixXd residuals;   // V x_i - λ_i Ṽ x_i, column per pair
  Eigen::MatrixXd images;      // Ṽ x_i; filled by operator_ritz only
};

/// Symmetric pencil (Q^T (V - ρṼ) Q, Q^T Ṽ Q) for orthonormal Q given V Q and
/// Ṽ Q. Residuals are recomputed with explicit products when requested
/// (two matvecs per pair), else formed from the supplied products.
Ritz pencil_ritz(const Pencil& pencil, const Eigen::MatrixXd& q, const Eigen::MatrixXd& vq,
                 const Eigen::MatrixXd& vdq, double rho, bool explicit_residuals);

/// Ritz pairs of M = V Ṽ^{-1} from g = Q^T (M - I) Q. `eq` holds (M - I) Q;
/// when given, residuals come from it, otherwise they are computed
/// explicitly (two matvecs per pair).
Ritz operator_ritz(const Pencil& pencil, const Eigen::MatrixXd& q, const Eigen::MatrixXd& g,
                   const Eigen::MatrixXd* eq);

/// (M - I) Q = V Ṽ^{-1} Q - Q, evaluated as V U - Ṽ U with U = Ṽ^{-1} Q
/// (two matvecs per column).
Eigen::MatrixXd shifted_operator(const Pencil& pencil, const Eigen::MatrixXd& q);

/// Base methods with unsorted output; see arnoldi_eigs and inverse_free_eigs.
Ritz arnoldi_base(const Pencil& pencil, Eigen::Index m, const Eigen::VectorXd& start);
Ritz inverse_free_base(const Pencil& pencil, Eigen::Index m, double rho,
                       const Eigen::VectorXd& start);

}  // namespace casimir::solvers::detail
