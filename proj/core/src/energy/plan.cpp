#include "casimir/energy/plan.hpp"

#include "casimir/errors.hpp"

#include <cmath>

namespace casimir::energy {

QuadraturePlan make_plan(double kappa, Eigen::Index n_q) {
  if (n_q < 2) throw ConfigError("quadrature needs at least two nodes");
  if (!std::isfinite(kappa) || kappa <= 0.0) throw ConfigError("cutoff kappa must be positive");
  QuadraturePlan plan;
  plan.kappa = kappa;
  const double y_min = std::exp(-kappa);
  const double delta = -std::expm1(-kappa) / static_cast<double>(n_q - 1);
  plan.y.resize(n_q);
  plan.k.resize(n_q);
  plan.weights.setConstant(n_q, delta);
  plan.weights[0] = plan.weights[n_q - 1] = 0.5 * delta;
  for (Eigen::Index j = 0; j < n_q; ++j) {
    plan.y[j] = 1.0 - static_cast<double>(j) * delta;
    plan.k[j] = -std::log1p(-static_cast<double>(j) * delta);
  }
  // Pin the endpoints exactly.
  plan.y[n_q - 1] = y_min;
  plan.k[0] = 0.0;
  plan.k[n_q - 1] = kappa;
  return plan;
}

double QuadraturePlan::integrate(std::span<const double> xi) const {
  if (static_cast<Eigen::Index>(xi.size()) != size()) {
    throw ConfigError("integrand length does not match the quadrature plan");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < size(); ++j) sum += weights[j] * xi[static_cast<std::size_t>(j)] / y[j];
  return sum;
}

double QuadraturePlan::integrate(const Eigen::VectorXd& xi) const {
  return integrate(std::span<const double>(xi.data(), static_cast<std::size_t>(xi.size())));
}

}  // namespace casimir::energy
