#include "casimir/solvers/pencil.hpp"

#include "casimir/errors.hpp"

#include <stdexcept>
#include <string>

namespace casimir::solvers {

Pencil::Pencil(bem::BlockMatrix v, std::shared_ptr<bem::MatvecCounter> counter)
    : v_(std::move(v)),
      v_diag_(bem::diagonal_part(v_)),
      counter_(counter ? std::move(counter) : std::make_shared<bem::MatvecCounter>()) {
  for (std::size_t i = 0; i < v_.num_blocks(); ++i) {
    if (!v_.has_block(i, i)) {
      throw NumericalError("diagonal block " + std::to_string(i) + " is missing");
    }
  }
}

Eigen::MatrixXd Pencil::apply_v(const Eigen::MatrixXd& x) const {
  return bem::matvec_columns(v_, x, *counter_);
}

Eigen::MatrixXd Pencil::apply_v_diag(const Eigen::MatrixXd& x) const {
  return bem::matvec_columns(v_diag_, x, *counter_);
}

void Pencil::factorize() const {
  if (!factors_.empty()) return;
  const std::size_t n = v_.num_blocks();
  factor_index_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool reused = false;
    for (std::size_t j = 0; j < i && !reused; ++j) {
      if (v_.block_ptr(j, j) == v_.block_ptr(i, i)) {
        factor_index_[i] = factor_index_[j];
        reused = true;
      }
    }
    if (reused) continue;
    auto llt = std::make_unique<Eigen::LLT<Eigen::MatrixXd>>(v_.block(i, i));
    if (llt->info() != Eigen::Success) {
      factors_.clear();
      throw NumericalError("diagonal block " + std::to_string(i) +
                           " is not positive definite (Cholesky failed)");
    }
    factor_index_[i] = factors_.size();
    factors_.push_back(std::move(llt));
  }
}

const Eigen::LLT<Eigen::MatrixXd>& Pencil::block_factor(std::size_t i) const {
  factorize();
  return *factors_.at(factor_index_.at(i));
}

Eigen::MatrixXd Pencil::solve_v_diag(const Eigen::MatrixXd& b) const {
  if (b.rows() != dim()) throw std::invalid_argument("solve: dimension mismatch");
  factorize();
  Eigen::MatrixXd x(b.rows(), b.cols());
  for (std::size_t i = 0; i < v_.num_blocks(); ++i) {
    const auto rows = Eigen::seqN(v_.offset(i), v_.block_size(i));
    x(rows, Eigen::all) = block_factor(i).solve(b(rows, Eigen::all));
  }
  return x;
}

}  // namespace casimir::solvers
