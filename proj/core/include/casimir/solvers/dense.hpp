#pragma once

#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/pencil.hpp"

namespace casimir::solvers {

/// Ξ = logdet V - Σ_j logdet V_jj. Computed as the log-determinant of the
/// block-whitened operator blockdiag(C)^{-1} V blockdiag(C)^{-T}, C_j C_j^T = V_jj,
/// whose diagonal blocks are the identity; this keeps full relative accuracy
/// when Ξ is tiny. Falls back to pivoted LU (log|det|) and flags the report
/// when a factorization fails.
SolverReport logdet_dense(const Pencil& pencil, double k = 0.0);

/// All generalized eigenvalues of (V, Ṽ), ascending. Dense O(n^3); meant for
/// diagnostics and tests.
Eigen::VectorXd dense_generalized_eigenvalues(const Pencil& pencil);

}  // namespace casimir::solvers
