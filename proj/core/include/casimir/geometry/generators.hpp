#pragma once

#include "casimir/geometry/mesh.hpp"

#include <cstddef>

namespace casimir::geometry {

/// Upper bound on generated triangles; exceeding it raises ResourceLimitError.
struct MeshBudget {
  std::size_t max_triangles = 4'000'000;
};

/// Subdivision frequency of the geodesic icosphere used for (radius, h):
/// every icosahedron edge is split into this many segments.
int icosphere_frequency(double radius, double h);

// All generators produce bodies centred at the origin with outward orientation.

/// Geodesic icosphere: icosahedron faces subdivided uniformly, then projected
/// radially. Frequency 1 is the bare icosahedron (12 vertices, 20 faces).
SurfaceMesh make_sphere(double radius, double h, const MeshBudget& budget = {});

/// Unit icosphere scaled along the axes. Uses h / max(semi_axes) for the
/// underlying sphere so no edge grows beyond the sphere bound.
SurfaceMesh make_ellipsoid(const Vec3& semi_axes, double h, const MeshBudget& budget = {});

/// Structured torus around the z axis, each quad split into two triangles.
SurfaceMesh make_torus(double major, double minor, double h, const MeshBudget& budget = {});

/// Axis-aligned box with a uniform structured grid on every face.
SurfaceMesh make_box(const Vec3& edge_lengths, double h, const MeshBudget& budget = {});

}  // namespace casimir::geometry
