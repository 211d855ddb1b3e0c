#pragma once

#include "casimir/geometry/mesh.hpp"

#include <cmath>
#include <numbers>

namespace casimir::bem {

inline constexpr double kInvFourPi = 0.25 * std::numbers::inv_pi;

/// e^{-k r} / (4 pi r) for r > 0, the single-layer kernel at wavenumber ik.
inline double kernel_of_distance(double k, double r) noexcept {
  return std::exp(-k * r) * kInvFourPi / r;
}

/// Kernel between two points; throws NumericalError when x == y, since the
/// diagonal singularity must go through the singular quadrature instead.
double kernel(double k, const geometry::Vec3& x, const geometry::Vec3& y);

}  // namespace casimir::bem
