#include "casimir/bem/kernel.hpp"

#include "casimir/errors.hpp"

namespace casimir::bem {

double kernel(double k, const geometry::Vec3& x, const geometry::Vec3& y) {
  const double r = (x - y).norm();
  if (r == 0.0) {
    throw NumericalError("kernel evaluated at coincident points; use the singular quadrature");
  }
  return kernel_of_distance(k, r);
}

}  // namespace casimir::bem
