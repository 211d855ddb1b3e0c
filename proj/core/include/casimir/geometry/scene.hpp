#pragma once

#include "casimir/geometry/mesh.hpp"

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

namespace casimir::geometry {

struct RigidMotion {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
};

/// Rotation by `angle` radians about `axis` (normalized internally).
Eigen::Matrix3d axis_rotation(const Vec3& axis, double angle);

/// Throws GeometryError unless the matrix is orthonormal with determinant +1
/// to within 1e-12.
void check_rotation(const Eigen::Matrix3d& rotation);

/// x -> R x + t on every vertex; connectivity is shared unchanged.
SurfaceMesh transform(const SurfaceMesh& mesh, const Eigen::Matrix3d& rotation,
                      const Vec3& translation);

/// One obstacle: a mesh in body coordinates plus its placement. Bodies with the
/// same non-empty `shape_tag` are declared congruent, so their self-interaction
/// blocks are assembled and factorized once.
struct Body {
  std::shared_ptr<const SurfaceMesh> mesh;
  RigidMotion motion;
  std::string shape_tag;
};

/// Ordered set of bodies with pairwise disjoint closures. Construction
/// validates motions, congruence tags and disjointness, and caches the
/// minimum surface distance.
class Scene {
public:
  explicit Scene(std::vector<Body> bodies);

  std::size_t num_bodies() const noexcept { return bodies_.size(); }
  const Body& body(std::size_t i) const { return bodies_.at(i); }
  /// Body mesh after its rigid motion.
  const SurfaceMesh& world_mesh(std::size_t i) const { return world_.at(i); }
  /// True when bodies i and j carry the same non-empty shape tag.
  bool congruent(std::size_t i, std::size_t j) const;

  /// Minimum distance over body pairs; cached at construction.
  double min_distance() const;
  double pair_distance(std::size_t i, std::size_t j) const;

  /// Same bodies with the motion composed on the left of every body motion.
  Scene moved(const RigidMotion& motion) const;
  /// Bodies reordered so that new body i is old body order[i].
  Scene permuted(const std::vector<std::size_t>& order) const;

private:
  std::vector<Body> bodies_;
  std::vector<SurfaceMesh> world_;
  std::vector<double> distances_;  // row-major N x N, zero diagonal
};

double min_distance(const Scene& scene);

}  // namespace casimir::geometry
