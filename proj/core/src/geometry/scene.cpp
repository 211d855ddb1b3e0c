#include "casimir/geometry/scene.hpp"

#include "casimir/errors.hpp"
#include "casimir/geometry/distance.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <limits>

namespace casimir::geometry {

Eigen::Matrix3d axis_rotation(const Vec3& axis, double angle) {
  if (!(axis.norm() > 0.0)) throw GeometryError("rotation axis must be nonzero");
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

void check_rotation(const Eigen::Matrix3d& rotation) {
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                           .cwiseAbs()
                           .maxCoeff();
  const double det = rotation.determinant();
  if (!(ortho <= 1e-12) || !(std::abs(det - 1.0) <= 1e-12)) {
    throw GeometryError("invalid transform: rotation must be orthonormal with determinant +1");
  }
}

SurfaceMesh transform(const SurfaceMesh& mesh, const Eigen::Matrix3d& rotation,
                      const Vec3& translation) {
  check_rotation(rotation);
  std::vector<Vec3> vertices;
  vertices.reserve(mesh.num_vertices());
  for (const auto& v : mesh.vertices()) vertices.push_back(rotation * v + translation);
  return SurfaceMesh(std::move(vertices), mesh.triangles());
}

Scene::Scene(std::vector<Body> bodies) : bodies_(std::move(bodies)) {
  if (bodies_.empty()) throw GeometryError("scene needs at least one body");
  const std::size_t n = bodies_.size();
  world_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Body& b = bodies_[i];
    if (!b.mesh) throw GeometryError("body " + std::to_string(i) + " has no mesh");
    try {
      world_.push_back(transform(*b.mesh, b.motion.rotation, b.motion.translation));
    } catch (const GeometryError& e) {
      throw GeometryError("body " + std::to_string(i) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!congruent(i, j)) continue;
      const auto& a = *bodies_[i].mesh;
      const auto& b = *bodies_[j].mesh;
      if (a.num_vertices() != b.num_vertices() || a.triangles() != b.triangles()) {
        throw GeometryError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                            " share shape tag '" + bodies_[i].shape_tag +
                            "' but have different meshes");
      }
    }
  }

  distances_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = surface_distance(world_[i], world_[j]);
      if (!(d > 1e-12)) {
        throw GeometryError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                            " overlap or touch");
      }
      if (contains_point(world_[i], world_[j].vertices().front())) {
        throw GeometryError("body " + std::to_string(j) + " lies inside body " +
                            std::to_string(i));
      }
      if (contains_point(world_[j], world_[i].vertices().front())) {
        throw GeometryError("body " + std::to_string(i) + " lies inside body " +
                            std::to_string(j));
      }
      distances_[i * n + j] = distances_[j * n + i] = d;
    }
  }
}

bool Scene::congruent(std::size_t i, std::size_t j) const {
  const auto& a = bodies_.at(i).shape_tag;
  return i == j || (!a.empty() && a == bodies_.at(j).shape_tag);
}

double Scene::pair_distance(std::size_t i, std::size_t j) const {
  const std::size_t n = bodies_.size();
  if (i >= n || j >= n) throw GeometryError("body index out of range");
  return distances_[i * n + j];
}

double Scene::min_distance() const {
  const std::size_t n = bodies_.size();
  if (n < 2) throw GeometryError("minimum distance needs at least two bodies");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, distances_[i * n + j]);
  }
  return best;
}

Scene Scene::moved(const RigidMotion& motion) const {
  check_rotation(motion.rotation);
  std::vector<Body> bodies = bodies_;
  for (auto& b : bodies) {
    b.motion.translation = motion.rotation * b.motion.translation + motion.translation;
    b.motion.rotation = motion.rotation * b.motion.rotation;
  }
  return Scene(std::move(bodies));
}

Scene Scene::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != bodies_.size()) throw GeometryError("permutation has wrong length");
  std::vector<char> seen(order.size(), 0);
  std::vector<Body> bodies;
  bodies.reserve(order.size());
  for (std::size_t idx : order) {
    if (idx >= order.size() || seen[idx]) throw GeometryError("invalid body permutation");
    seen[idx] = 1;
    bodies.push_back(bodies_[idx]);
  }
  return Scene(std::move(bodies));
}

double min_distance(const Scene& scene) { return scene.min_distance(); }

}  // namespace casimir::geometry
