#include "casimir/errors.hpp"
#include "casimir/geometry/distance.hpp"
#include "casimir/geometry/generators.hpp"
#include "casimir/geometry/scene.hpp"

#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace casimir;
using namespace casimir::geometry;

TEST_CASE("primitive distances", "[geometry]") {
  CHECK(point_segment_distance({0, 1, 0}, {-1, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(point_segment_distance({3, 4, 0}, {-1, 0, 0}, {0, 0, 0}) == 5.0);
  CHECK(point_triangle_distance({0.2, 0.2, 2}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}) == 2.0);
  CHECK(std::abs(point_triangle_distance({1, 1, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}) -
                 std::sqrt(0.5)) <= 1e-15);
  CHECK(segment_segment_distance({0, 0, 0}, {1, 0, 0}, {0.5, -1, 1}, {0.5, 1, 1}) == 1.0);
  CHECK(segment_segment_distance({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}) == 1.0);

  // Edge-edge configuration that no vertex realizes: crossed edges above each other.
  const std::array<Vec3, 3> a{Vec3{-1, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 0, -1}};
  const std::array<Vec3, 3> b{Vec3{0, -1, 0.3}, Vec3{0, 1, 0.3}, Vec3{0, 0, 1.3}};
  CHECK(std::abs(triangle_distance(a, b) - 0.3) <= 1e-15);

  // Piercing triangles touch.
  const std::array<Vec3, 3> c{Vec3{0, -1, -0.5}, Vec3{0, 1, -0.5}, Vec3{0, 0, 1}};
  const std::array<Vec3, 3> d{Vec3{-1, -1, 0}, Vec3{1, -1, 0}, Vec3{0, 1, 0}};
  CHECK(triangle_distance(c, d) == 0.0);
}

TEST_CASE("scene distances", "[geometry]") {
  const double h = 0.2;
  const auto spheres = testing::two_spheres(h, 1.5);
  CHECK(std::abs(spheres->min_distance() - 1.5) <= 2.0 * h * h);
  CHECK(spheres->min_distance() >= 1.5);

  const auto cubes = testing::two_cubes(0.25, 0.5);
  CHECK(std::abs(cubes->min_distance() - 0.5) <= 1e-15);

  CHECK_THROWS_AS(min_distance(*testing::single_sphere(0.4)), GeometryError);
}

TEST_CASE("scene distance invariances", "[geometry]") {
  auto mesh = std::make_shared<const SurfaceMesh>(make_ellipsoid({1.0, 0.6, 0.4}, 0.3));
  RigidMotion a, b;
  a.rotation = axis_rotation({1, 1, 0}, 0.7);
  b.rotation = axis_rotation({0, 0, 1}, 1.1);
  b.translation = {2.4, 0.3, -0.2};
  const Scene scene({{mesh, a, ""}, {mesh, b, ""}});
  const double z = scene.min_distance();

  CHECK(std::abs(scene.permuted({1, 0}).min_distance() - z) <= 1e-12);
  RigidMotion all;
  all.rotation = axis_rotation({0.3, -1, 2}, 2.2);
  all.translation = {-5, 7, 1};
  CHECK(std::abs(scene.moved(all).min_distance() - z) <= 1e-12);
}

TEST_CASE("invalid scenes are rejected", "[geometry]") {
  CHECK_THROWS_AS(testing::two_spheres(0.3, -0.5), GeometryError);
  CHECK_THROWS_AS(testing::two_cubes(0.5, 0.0), GeometryError);
  CHECK_THROWS_AS(Scene({}), GeometryError);

  // A small sphere entirely inside a large one.
  auto big = std::make_shared<const SurfaceMesh>(make_sphere(2.0, 0.5));
  auto small = std::make_shared<const SurfaceMesh>(make_sphere(0.5, 0.5));
  CHECK_THROWS_AS(Scene({{big, {}, ""}, {small, {}, ""}}), GeometryError);

  // Congruence tags must match the geometry they claim.
  auto other = std::make_shared<const SurfaceMesh>(make_sphere(1.0, 0.3));
  RigidMotion far;
  far.translation = {5, 0, 0};
  CHECK_THROWS_AS(Scene({{big, {}, "x"}, {other, far, "x"}}), GeometryError);
}

TEST_CASE("point containment", "[geometry]") {
  const auto sphere = make_sphere(1.0, 0.3);
  CHECK(contains_point(sphere, {0.1, -0.2, 0.3}));
  CHECK_FALSE(contains_point(sphere, {1.5, 0, 0}));
}
