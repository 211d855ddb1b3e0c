#pragma once

#include <Eigen/Core>

namespace casimir::energy {

/// Second-order extrapolation to h = 0 from a coarse and a fine value:
/// (h_c^2 v_f - h_f^2 v_c) / (h_c^2 - h_f^2). Throws ConfigError unless
/// 0 < h_fine < h_coarse.
double richardson(double coarse, double fine, double h_coarse, double h_fine);

/// Entrywise version for per-node extrapolation on a shared plan.
Eigen::VectorXd richardson(const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine,
                           double h_coarse, double h_fine);

}  // namespace casimir::energy
