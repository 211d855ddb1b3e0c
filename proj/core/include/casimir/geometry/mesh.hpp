#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace casimir::geometry {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

/// First problem found by the mesh validator. `triangle` is set when the
/// defect can be pinned to one face, so file readers can report a line.
struct MeshDefect {
  std::string message;
  std::optional<std::size_t> triangle;
};

/// Checks index range, degeneracy, unreferenced vertices, watertightness,
/// consistent orientation and outward orientation (positive enclosed volume).
std::optional<MeshDefect> find_defect(const std::vector<Vec3>& vertices,
                                      const std::vector<Triangle>& triangles);

/// Closed, consistently oriented triangulated surface. Immutable once built;
/// the constructor throws GeometryError on any defect.
class SurfaceMesh {
public:
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return 3 * triangles_.size() / 2; }
  long euler_characteristic() const noexcept;

  double triangle_area(std::size_t t) const;
  Vec3 triangle_normal(std::size_t t) const;  // unit, outward
  double area() const;
  double volume() const;
  Vec3 centroid() const;  // area-weighted surface centroid
  double max_edge_length() const;
  Eigen::AlignedBox3d bounding_box() const;

private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
};

}  // namespace casimir::geometry
