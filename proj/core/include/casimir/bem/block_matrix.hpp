#pragma once

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace casimir::bem {

/// N x N grid of dense blocks. Blocks are shared, immutable matrices so that
/// congruent bodies and the diagonal part can reuse storage; a missing block
/// stands for zero.
class BlockMatrix {
public:
  using Block = std::shared_ptr<const Eigen::MatrixXd>;

  explicit BlockMatrix(std::vector<Eigen::Index> block_sizes);

  std::size_t num_blocks() const noexcept { return sizes_.size(); }
  Eigen::Index dim() const noexcept { return offsets_.back(); }
  Eigen::Index block_size(std::size_t i) const { return sizes_.at(i); }
  Eigen::Index offset(std::size_t i) const { return offsets_.at(i); }
  const std::vector<Eigen::Index>& block_sizes() const noexcept { return sizes_; }

  bool has_block(std::size_t i, std::size_t j) const { return static_cast<bool>(at(i, j)); }
  const Eigen::MatrixXd& block(std::size_t i, std::size_t j) const;
  const Block& block_ptr(std::size_t i, std::size_t j) const { return at(i, j); }
  void set_block(std::size_t i, std::size_t j, Block block);

  /// True when no off-diagonal block is present.
  bool is_block_diagonal() const;

  /// Y = A X without touching any matvec counter.
  void multiply(const Eigen::Ref<const Eigen::MatrixXd>& x, Eigen::Ref<Eigen::MatrixXd> y) const;

  Eigen::MatrixXd to_dense() const;

private:
  const Block& at(std::size_t i, std::size_t j) const;

  std::vector<Eigen::Index> sizes_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Block> blocks_;  // row-major N x N
};

/// Block-diagonal copy sharing the diagonal blocks; off-diagonal blocks absent.
BlockMatrix diagonal_part(const BlockMatrix& full);

}  // namespace casimir::bem
