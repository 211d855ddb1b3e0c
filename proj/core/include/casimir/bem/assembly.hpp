#pragma once

#include "casimir/bem/block_matrix.hpp"
#include "casimir/bem/p1_space.hpp"
#include "casimir/bem/quadrature.hpp"

#include <Eigen/Core>

#include <array>

namespace casimir::bem {

struct AssemblyOptions {
  int regular_degree = 4;  // symmetric triangle rule for separated pairs
  int singular_order = 4;  // Gauss points per dimension for touching pairs
};

/// Checks the options against the available rules; throws ConfigError.
void validate(const AssemblyOptions& options);

/// Galerkin block of the single-layer operator between bodies i (rows) and
/// j (columns) at wavenumber ik.
Eigen::MatrixXd assemble_block(const P1Space& space, double k, std::size_t i, std::size_t j,
                               const AssemblyOptions& options = {});

/// Full operator. Congruent bodies share one diagonal block; block (j, i) is
/// stored as the exact transpose of block (i, j).
BlockMatrix assemble(const P1Space& space, double k, const AssemblyOptions& options = {});

/// 3x3 local matrix of one touching triangle pair. Shared vertices come first:
/// p[0] == q[0] for a vertex pair, p[0..1] == q[0..1] for an edge pair, p == q
/// for the coincident case.
Eigen::Matrix3d singular_pair_matrix(PairKind kind, const std::array<geometry::Vec3, 3>& p,
                                     const std::array<geometry::Vec3, 3>& q, double k, int order);

/// 3x3 local matrix of a separated triangle pair with the tensor triangle rule.
Eigen::Matrix3d regular_pair_matrix(const std::array<geometry::Vec3, 3>& p,
                                    const std::array<geometry::Vec3, 3>& q, double k, int degree);

}  // namespace casimir::bem
