#pragma once

#include "casimir/bem/block_matrix.hpp"

#include <atomic>
#include <cstdint>

namespace casimir::bem {

/// Tally of full-operator applications (V or its diagonal part), the cost
/// unit of the Krylov budgets. Safe to bump from several threads.
class MatvecCounter {
public:
  void add(std::uint64_t n) noexcept { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t value() const noexcept { return count_.load(std::memory_order_relaxed); }
  void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

private:
  std::atomic<std::uint64_t> count_{0};
};

/// Process-wide counter that every matvec below also increments.
MatvecCounter& global_matvec_counter();

/// y = A x; counts one application.
Eigen::VectorXd matvec(const BlockMatrix& a, const Eigen::Ref<const Eigen::VectorXd>& x,
                       MatvecCounter& counter);

/// Y = A X; counts one application per column.
Eigen::MatrixXd matvec_columns(const BlockMatrix& a, const Eigen::Ref<const Eigen::MatrixXd>& x,
                               MatvecCounter& counter);

}  // namespace casimir::bem
