#pragma once

#include "casimir/bem/block_matrix.hpp"
#include "casimir/bem/matvec.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <memory>
#include <vector>

namespace casimir::solvers {

/// The pair (V, Ṽ) at one wavenumber. Applications of either operator are
/// counted; solves with Ṽ use per-block Cholesky factors computed once, with
/// congruent bodies (shared block storage) factorized a single time.
class Pencil {
public:
  explicit Pencil(bem::BlockMatrix v, std::shared_ptr<bem::MatvecCounter> counter = nullptr);

  const bem::BlockMatrix& v() const noexcept { return v_; }
  const bem::BlockMatrix& v_diag() const noexcept { return v_diag_; }
  Eigen::Index dim() const noexcept { return v_.dim(); }
  std::size_t num_blocks() const noexcept { return v_.num_blocks(); }

  /// V X and Ṽ X, one counted matvec per column.
  Eigen::MatrixXd apply_v(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd apply_v_diag(const Eigen::MatrixXd& x) const;

  /// Ṽ^{-1} B via the block factors; not a matvec.
  Eigen::MatrixXd solve_v_diag(const Eigen::MatrixXd& b) const;

  /// Factorizes every distinct diagonal block; throws NumericalError when a
  /// block is not positive definite. Idempotent.
  void factorize() const;
  /// Cholesky factor of diagonal block i (factorizes on demand).
  const Eigen::LLT<Eigen::MatrixXd>& block_factor(std::size_t i) const;

  bem::MatvecCounter& counter() const noexcept { return *counter_; }
  std::uint64_t matvecs() const noexcept { return counter_->value(); }

private:
  bem::BlockMatrix v_;
  bem::BlockMatrix v_diag_;
  std::shared_ptr<bem::MatvecCounter> counter_;
  // factor_index_[i] points into factors_; congruent blocks share an entry.
  mutable std::vector<std::size_t> factor_index_;
  mutable std::vector<std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>>> factors_;
};

}  // namespace casimir::solvers
