#include "casimir/bem/p1_space.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace casimir::bem {

P1Space::P1Space(std::shared_ptr<const geometry::Scene> scene) : scene_(std::move(scene)) {
  if (!scene_) throw GeometryError("P1 space needs a scene");
  offsets_.push_back(0);
  for (std::size_t b = 0; b < scene_->num_bodies(); ++b) {
    sizes_.push_back(static_cast<Eigen::Index>(scene_->world_mesh(b).num_vertices()));
    offsets_.push_back(offsets_.back() + sizes_.back());
  }
}

Eigen::Index P1Space::global_index(std::size_t body, Eigen::Index vertex) const {
  if (body >= sizes_.size() || vertex < 0 || vertex >= sizes_[body]) {
    throw std::out_of_range("P1 degree of freedom out of range");
  }
  return offsets_[body] + vertex;
}

std::pair<std::size_t, Eigen::Index> P1Space::locate(Eigen::Index global) const {
  if (global < 0 || global >= dim()) throw std::out_of_range("global index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  const auto body = static_cast<std::size_t>(it - offsets_.begin() - 1);
  return {body, global - offsets_[body]};
}

}  // namespace casimir::bem
