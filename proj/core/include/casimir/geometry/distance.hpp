#pragma once

#include "casimir/geometry/mesh.hpp"

namespace casimir::geometry {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
double segment_segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

/// Exact Euclidean distance between two closed triangles (zero if they touch
/// or intersect).
double triangle_distance(const std::array<Vec3, 3>& a, const std::array<Vec3, 3>& b);

/// Minimum over all triangle pairs, with bounding-sphere pruning.
double surface_distance(const SurfaceMesh& a, const SurfaceMesh& b);

/// Generalized winding number test: true when p lies inside the closed surface.
bool contains_point(const SurfaceMesh& mesh, const Vec3& p);

}  // namespace casimir::geometry
