#include "casimir/energy/richardson.hpp"

#include "casimir/errors.hpp"

#include <cmath>

namespace casimir::energy {

namespace {

void check_sizes(double h_coarse, double h_fine) {
  if (!(h_fine > 0.0) || !(h_coarse > 0.0)) throw ConfigError("mesh sizes must be positive");
  if (h_fine == h_coarse) throw ConfigError("Richardson extrapolation needs two distinct mesh sizes");
  if (h_fine > h_coarse) throw ConfigError("Richardson extrapolation expects h_fine < h_coarse");
}

}  // namespace

double richardson(double coarse, double fine, double h_coarse, double h_fine) {
  check_sizes(h_coarse, h_fine);
  const double c2 = h_coarse * h_coarse;
  const double f2 = h_fine * h_fine;
  return (c2 * fine - f2 * coarse) / (c2 - f2);
}

Eigen::VectorXd richardson(const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine,
                           double h_coarse, double h_fine) {
  check_sizes(h_coarse, h_fine);
  if (coarse.size() != fine.size()) throw ConfigError("per-node extrapolation needs equal plans");
  const double c2 = h_coarse * h_coarse;
  const double f2 = h_fine * h_fine;
  return (c2 * fine - f2 * coarse) / (c2 - f2);
}

}  // namespace casimir::energy
