#pragma once

#include "casimir/geometry/scene.hpp"

#include <Eigen/Core>

#include <memory>
#include <utility>
#include <vector>

namespace casimir::bem {

/// Continuous piecewise-linear space on every body of a scene: one degree of
/// freedom per vertex, numbered body by body.
class P1Space {
public:
  explicit P1Space(std::shared_ptr<const geometry::Scene> scene);

  const geometry::Scene& scene() const noexcept { return *scene_; }
  std::shared_ptr<const geometry::Scene> scene_ptr() const noexcept { return scene_; }

  std::size_t num_bodies() const noexcept { return sizes_.size(); }
  Eigen::Index dim() const noexcept { return offsets_.back(); }
  Eigen::Index body_dim(std::size_t body) const { return sizes_.at(body); }
  Eigen::Index offset(std::size_t body) const { return offsets_.at(body); }
  const std::vector<Eigen::Index>& block_sizes() const noexcept { return sizes_; }

  Eigen::Index global_index(std::size_t body, Eigen::Index vertex) const;
  /// Inverse of global_index: (body, vertex).
  std::pair<std::size_t, Eigen::Index> locate(Eigen::Index global) const;

private:
  std::shared_ptr<const geometry::Scene> scene_;
  std::vector<Eigen::Index> sizes_;
  std::vector<Eigen::Index> offsets_;  // length N + 1
};

}  // namespace casimir::bem
