#include "casimir/geometry/mesh.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace casimir::geometry {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::string edge_name(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

std::optional<MeshDefect> find_defect(const std::vector<Vec3>& vertices,
                                      const std::vector<Triangle>& triangles) {
  if (vertices.empty() || triangles.empty()) return MeshDefect{"mesh is empty", std::nullopt};
  const auto nv = static_cast<long>(vertices.size());

  std::vector<char> used(vertices.size(), 0);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        return MeshDefect{"triangle " + std::to_string(t) + " references vertex " +
                              std::to_string(v) + " outside [0, " + std::to_string(nv) + ")",
                          t};
      }
      used[static_cast<std::size_t>(v)] = 1;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      return MeshDefect{"triangle " + std::to_string(t) + " repeats a vertex", t};
    }
    const Vec3& a = vertices[tri[0]];
    const Vec3 e1 = vertices[tri[1]] - a;
    const Vec3 e2 = vertices[tri[2]] - a;
    if (e1.cross(e2).norm() <= 1e-12 * e1.norm() * e2.norm()) {
      return MeshDefect{"triangle " + std::to_string(t) + " is degenerate (zero area)", t};
    }
  }
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) {
      return MeshDefect{"vertex " + std::to_string(v) + " is not used by any triangle",
                        std::nullopt};
    }
  }

  // Each directed edge must occur once and its reverse exactly once.
  std::unordered_map<std::uint64_t, std::size_t> directed;
  directed.reserve(triangles.size() * 3);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (int e = 0; e < 3; ++e) {
      const int a = tri[e];
      const int b = tri[(e + 1) % 3];
      auto [it, fresh] = directed.emplace(edge_key(a, b), t);
      if (!fresh) {
        // Same direction twice: either a flipped neighbour or a fan of 3+ faces.
        const bool fan = directed.count(edge_key(b, a)) > 0;
        return MeshDefect{
            fan ? "edge " + edge_name(a, b) + " is shared by more than two triangles"
                : "edge " + edge_name(a, b) +
                      " is traversed in the same direction by triangles " +
                      std::to_string(it->second) + " and " + std::to_string(t) +
                      " (inconsistent orientation)",
            t};
      }
    }
  }
  for (const auto& [key, t] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    if (!directed.count(edge_key(b, a))) {
      return MeshDefect{"edge " + edge_name(a, b) + " belongs to a single triangle (open surface)",
                        t};
    }
  }

  double six_volume = 0.0;
  for (const auto& tri : triangles) {
    six_volume += vertices[tri[0]].dot(vertices[tri[1]].cross(vertices[tri[2]]));
  }
  if (!(six_volume > 0.0)) {
    return MeshDefect{"surface is oriented inward (non-positive enclosed volume)", std::nullopt};
  }
  return std::nullopt;
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (auto defect = find_defect(vertices_, triangles_)) throw GeometryError(defect->message);
}

long SurfaceMesh::euler_characteristic() const noexcept {
  return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
         static_cast<long>(num_triangles());
}

double SurfaceMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles_.at(t);
  const Vec3& a = vertices_[tri[0]];
  return 0.5 * (vertices_[tri[1]] - a).cross(vertices_[tri[2]] - a).norm();
}

Vec3 SurfaceMesh::triangle_normal(std::size_t t) const {
  const auto& tri = triangles_.at(t);
  const Vec3& a = vertices_[tri[0]];
  return (vertices_[tri[1]] - a).cross(vertices_[tri[2]] - a).normalized();
}

double SurfaceMesh::area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += triangle_area(t);
  return sum;
}

double SurfaceMesh::volume() const {
  double sum = 0.0;
  for (const auto& tri : triangles_) {
    sum += vertices_[tri[0]].dot(vertices_[tri[1]].cross(vertices_[tri[2]]));
  }
  return sum / 6.0;
}

Vec3 SurfaceMesh::centroid() const {
  Vec3 acc = Vec3::Zero();
  double total = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const double a = triangle_area(t);
    acc += a * (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
    total += a;
  }
  return acc / total;
}

double SurfaceMesh::max_edge_length() const {
  double longest = 0.0;
  for (const auto& tri : triangles_) {
    for (int e = 0; e < 3; ++e) {
      longest = std::max(longest, (vertices_[tri[e]] - vertices_[tri[(e + 1) % 3]]).norm());
    }
  }
  return longest;
}

Eigen::AlignedBox3d SurfaceMesh::bounding_box() const {
  Eigen::AlignedBox3d box;
  for (const auto& v : vertices_) box.extend(v);
  return box;
}

}  // namespace casimir::geometry
