#include "casimir/bem/block_matrix.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace casimir::bem {

BlockMatrix::BlockMatrix(std::vector<Eigen::Index> block_sizes) : sizes_(std::move(block_sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("block matrix needs at least one block");
  offsets_.push_back(0);
  for (auto s : sizes_) {
    if (s <= 0) throw std::invalid_argument("block sizes must be positive");
    offsets_.push_back(offsets_.back() + s);
  }
  blocks_.resize(sizes_.size() * sizes_.size());
}

const BlockMatrix::Block& BlockMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= sizes_.size() || j >= sizes_.size()) throw std::out_of_range("block index out of range");
  return blocks_[i * sizes_.size() + j];
}

const Eigen::MatrixXd& BlockMatrix::block(std::size_t i, std::size_t j) const {
  const auto& b = at(i, j);
  if (!b) {
    throw std::out_of_range("block (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") is absent");
  }
  return *b;
}

void BlockMatrix::set_block(std::size_t i, std::size_t j, Block block) {
  at(i, j);  // range check
  if (block && (block->rows() != sizes_[i] || block->cols() != sizes_[j])) {
    throw std::invalid_argument("block (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") has the wrong shape");
  }
  blocks_[i * sizes_.size() + j] = std::move(block);
}

bool BlockMatrix::is_block_diagonal() const {
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
      if (i != j && blocks_[i * sizes_.size() + j]) return false;
    }
  }
  return true;
}

void BlockMatrix::multiply(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           Eigen::Ref<Eigen::MatrixXd> y) const {
  if (x.rows() != dim() || y.rows() != dim() || x.cols() != y.cols()) {
    throw std::invalid_argument("block matrix product: dimension mismatch");
  }
  const std::size_t n = sizes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto yi = y.middleRows(offsets_[i], sizes_[i]);
    yi.setZero();
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto& b = blocks_[i * n + j]) {
        yi.noalias() += (*b) * x.middleRows(offsets_[j], sizes_[j]);
      }
    }
  }
}

Eigen::MatrixXd BlockMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  const std::size_t n = sizes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto& b = blocks_[i * n + j]) {
        out.block(offsets_[i], offsets_[j], sizes_[i], sizes_[j]) = *b;
      }
    }
  }
  return out;
}

BlockMatrix diagonal_part(const BlockMatrix& full) {
  BlockMatrix out(full.block_sizes());
  for (std::size_t i = 0; i < full.num_blocks(); ++i) out.set_block(i, i, full.block_ptr(i, i));
  return out;
}

}  // namespace casimir::bem
