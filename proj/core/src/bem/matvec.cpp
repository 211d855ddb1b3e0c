#include "casimir/bem/matvec.hpp"

#include <stdexcept>

namespace casimir::bem {

MatvecCounter& global_matvec_counter() {
  static MatvecCounter counter;
  return counter;
}

Eigen::VectorXd matvec(const BlockMatrix& a, const Eigen::Ref<const Eigen::VectorXd>& x,
                       MatvecCounter& counter) {
  if (x.size() != a.dim()) throw std::invalid_argument("matvec: dimension mismatch");
  Eigen::VectorXd y(a.dim());
  a.multiply(x, y);
  counter.add(1);
  global_matvec_counter().add(1);
  return y;
}

Eigen::MatrixXd matvec_columns(const BlockMatrix& a, const Eigen::Ref<const Eigen::MatrixXd>& x,
                               MatvecCounter& counter) {
  if (x.rows() != a.dim()) throw std::invalid_argument("matvec: dimension mismatch");
  Eigen::MatrixXd y(a.dim(), x.cols());
  a.multiply(x, y);
  counter.add(static_cast<std::uint64_t>(x.cols()));
  global_matvec_counter().add(static_cast<std::uint64_t>(x.cols()));
  return y;
}

}  // namespace casimir::bem
