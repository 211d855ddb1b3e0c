#pragma once

#include <Eigen/Core>

#include <span>

namespace casimir::energy {

/// Trapezoid rule in y = e^{-k} on [e^{-κ}, 1]. Nodes are stored in the order
/// y = 1 first, so wavenumbers ascend from k = 0 to k = κ.
struct QuadraturePlan {
  double kappa = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXd k;
  Eigen::VectorXd weights;  // trapezoid weights in y

  Eigen::Index size() const noexcept { return y.size(); }
  double spacing() const noexcept { return size() > 1 ? y[0] - y[1] : 0.0; }
  /// Σ w_j Ξ_j / y_j, the integral of Ξ over k in [0, κ].
  double integrate(std::span<const double> xi) const;
  double integrate(const Eigen::VectorXd& xi) const;
};

/// Throws ConfigError unless n_q >= 2 and kappa > 0.
QuadraturePlan make_plan(double kappa, Eigen::Index n_q);

}  // namespace casimir::energy
