#pragma once

#include "casimir/bem/p1_space.hpp"
#include "casimir/geometry/generators.hpp"
#include "casimir/geometry/scene.hpp"

#include <memory>
#include <vector>

namespace casimir::testing {

// Two congruent spheres of radius r on the x axis, surface gap z.
inline std::shared_ptr<const geometry::Scene> two_spheres(double h, double z, double r = 1.0) {
  auto mesh = std::make_shared<const geometry::SurfaceMesh>(geometry::make_sphere(r, h));
  geometry::RigidMotion second;
  second.translation = {2.0 * r + z, 0.0, 0.0};
  return std::make_shared<const geometry::Scene>(
      std::vector<geometry::Body>{{mesh, {}, "sphere"}, {mesh, second, "sphere"}});
}

// Unit cubes facing each other across the plane x = const, surface gap z.
inline std::shared_ptr<const geometry::Scene> two_cubes(double h, double z) {
  auto mesh = std::make_shared<const geometry::SurfaceMesh>(geometry::make_box({1, 1, 1}, h));
  geometry::RigidMotion second;
  second.translation = {1.0 + z, 0.0, 0.0};
  return std::make_shared<const geometry::Scene>(
      std::vector<geometry::Body>{{mesh, {}, "cube"}, {mesh, second, "cube"}});
}

inline std::shared_ptr<const geometry::Scene> single_sphere(double h) {
  auto mesh = std::make_shared<const geometry::SurfaceMesh>(geometry::make_sphere(1.0, h));
  return std::make_shared<const geometry::Scene>(std::vector<geometry::Body>{{mesh, {}, "sphere"}});
}

}  // namespace casimir::testing
