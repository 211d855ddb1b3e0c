#include "casimir/geometry/generators.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace casimir::geometry {

namespace {

// Central angle between adjacent icosahedron vertices on the unit sphere.
const double kIcosahedronArc = std::atan(2.0);

void check_budget(std::size_t triangles, const MeshBudget& budget, const char* what) {
  if (triangles > budget.max_triangles) {
    throw ResourceLimitError(std::string(what) + " would need " + std::to_string(triangles) +
                             " triangles, above the budget of " +
                             std::to_string(budget.max_triangles) + "; increase h");
  }
}

int cells(double length, double h) {
  return std::max(1, static_cast<int>(std::ceil(length / h - 1e-9)));
}

struct Icosahedron {
  std::array<Vec3, 12> vertices;
  std::array<Triangle, 20> faces;
};

Icosahedron unit_icosahedron() {
  const double phi = std::numbers::phi;
  Icosahedron ico{
      {Vec3(-1, phi, 0), Vec3(1, phi, 0), Vec3(-1, -phi, 0), Vec3(1, -phi, 0),
       Vec3(0, -1, phi), Vec3(0, 1, phi), Vec3(0, -1, -phi), Vec3(0, 1, -phi),
       Vec3(phi, 0, -1), Vec3(phi, 0, 1), Vec3(-phi, 0, -1), Vec3(-phi, 0, 1)},
      {{{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}}}};
  for (auto& v : ico.vertices) v.normalize();
  for (auto& f : ico.faces) {
    const Vec3 n = (ico.vertices[f[1]] - ico.vertices[f[0]])
                       .cross(ico.vertices[f[2]] - ico.vertices[f[0]]);
    if (n.dot(ico.vertices[f[0]]) < 0) std::swap(f[1], f[2]);
  }
  return ico;
}

}  // namespace

int icosphere_frequency(double radius, double h) {
  return std::max(1, static_cast<int>(std::ceil(kIcosahedronArc * radius / h - 1e-9)));
}

SurfaceMesh make_sphere(double radius, double h, const MeshBudget& budget) {
  if (!(radius > 0.0)) throw GeometryError("sphere radius must be positive");
  if (!(h > 0.0) || !(h < radius * std::numbers::pi)) {
    throw GeometryError("sphere mesh size h must lie in (0, pi * radius)");
  }
  const int nu = icosphere_frequency(radius, h);
  check_budget(20 * static_cast<std::size_t>(nu) * nu, budget, "sphere");

  const Icosahedron ico = unit_icosahedron();
  std::vector<Vec3> vertices;
  vertices.reserve(10 * static_cast<std::size_t>(nu) * nu + 2);
  std::vector<Triangle> triangles;
  triangles.reserve(20 * static_cast<std::size_t>(nu) * nu);

  // A lattice point is identified by its integer weights on the icosahedron
  // corners; points on shared edges therefore get one index and one position.
  using Key = std::array<int, 6>;
  std::map<Key, int> index;
  auto vertex_at = [&](const Triangle& f, int wa, int wb, int wc) {
    std::array<std::pair<int, int>, 3> parts{{{f[0], wa}, {f[1], wb}, {f[2], wc}}};
    std::sort(parts.begin(), parts.end());
    Key key{};
    int slot = 0;
    for (const auto& [corner, weight] : parts) {
      if (weight == 0) continue;
      key[slot++] = corner;
      key[slot++] = weight;
    }
    for (; slot < 6; ++slot) key[slot] = -1;
    auto [it, fresh] = index.emplace(key, static_cast<int>(vertices.size()));
    if (fresh) {
      Vec3 p = Vec3::Zero();
      for (const auto& [corner, weight] : parts) p += weight * ico.vertices[corner];
      vertices.push_back(radius * p.normalized());
    }
    return it->second;
  };

  for (const auto& f : ico.faces) {
    // grid[i][j] is the point A + i/nu (B - A) + j/nu (C - A).
    std::vector<std::vector<int>> grid(nu + 1);
    for (int i = 0; i <= nu; ++i) {
      grid[i].resize(nu + 1 - i);
      for (int j = 0; i + j <= nu; ++j) grid[i][j] = vertex_at(f, nu - i - j, i, j);
    }
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; i + j < nu; ++j) {
        triangles.push_back({grid[i][j], grid[i + 1][j], grid[i][j + 1]});
        if (i + j + 1 < nu) {
          triangles.push_back({grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
        }
      }
    }
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

SurfaceMesh make_ellipsoid(const Vec3& semi_axes, double h, const MeshBudget& budget) {
  if (!(semi_axes.minCoeff() > 0.0)) throw GeometryError("ellipsoid semi-axes must be positive");
  const SurfaceMesh unit = make_sphere(1.0, h / semi_axes.maxCoeff(), budget);
  std::vector<Vec3> vertices = unit.vertices();
  for (auto& v : vertices) v = v.cwiseProduct(semi_axes);
  return SurfaceMesh(std::move(vertices), unit.triangles());
}

SurfaceMesh make_torus(double major, double minor, double h, const MeshBudget& budget) {
  if (!(minor > 0.0) || !(major > 0.0)) throw GeometryError("torus radii must be positive");
  if (minor >= major) throw GeometryError("torus minor radius must be smaller than major radius");
  if (!(h > 0.0)) throw GeometryError("torus mesh size h must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  const int nu = std::max(3, cells(two_pi * (major + minor), h));
  const int nv = std::max(3, cells(two_pi * minor, h));
  check_budget(2 * static_cast<std::size_t>(nu) * nv, budget, "torus");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    const double u = two_pi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double v = two_pi * j / nv;
      const double ring = major + minor * std::cos(v);
      vertices.emplace_back(ring * std::cos(u), ring * std::sin(u), minor * std::sin(v));
    }
  }
  auto id = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

SurfaceMesh make_box(const Vec3& edge_lengths, double h, const MeshBudget& budget) {
  if (!(edge_lengths.minCoeff() > 0.0)) throw GeometryError("box edge lengths must be positive");
  if (!(h > 0.0)) throw GeometryError("box mesh size h must be positive");
  const std::array<int, 3> n{cells(edge_lengths.x(), h), cells(edge_lengths.y(), h),
                             cells(edge_lengths.z(), h)};
  const std::size_t faces_cells = 2 * (static_cast<std::size_t>(n[0]) * n[1] +
                                       static_cast<std::size_t>(n[1]) * n[2] +
                                       static_cast<std::size_t>(n[0]) * n[2]);
  check_budget(2 * faces_cells, budget, "box");

  // Lattice index -> vertex id, only boundary lattice points get an id.
  std::vector<int> lattice(static_cast<std::size_t>(n[0] + 1) * (n[1] + 1) * (n[2] + 1), -1);
  std::vector<Vec3> vertices;
  auto vertex = [&](const std::array<int, 3>& c) {
    const std::size_t key = (static_cast<std::size_t>(c[2]) * (n[1] + 1) + c[1]) * (n[0] + 1) + c[0];
    if (lattice[key] < 0) {
      lattice[key] = static_cast<int>(vertices.size());
      Vec3 p;
      for (int d = 0; d < 3; ++d) p[d] = edge_lengths[d] * (static_cast<double>(c[d]) / n[d] - 0.5);
      vertices.push_back(p);
    }
    return lattice[key];
  };

  std::vector<Triangle> triangles;
  triangles.reserve(2 * faces_cells);
  // (normal axis, side, u axis, v axis) with u x v pointing outward.
  const std::array<std::array<int, 4>, 6> faces{{{0, 0, 2, 1}, {0, 1, 1, 2}, {1, 0, 0, 2},
                                                 {1, 1, 2, 0}, {2, 0, 1, 0}, {2, 1, 0, 1}}};
  for (const auto& [axis, side, ua, va] : faces) {
    for (int a = 0; a < n[ua]; ++a) {
      for (int b = 0; b < n[va]; ++b) {
        auto corner = [&](int du, int dv) {
          std::array<int, 3> c{};
          c[axis] = side ? n[axis] : 0;
          c[ua] = a + du;
          c[va] = b + dv;
          return vertex(c);
        };
        const int p00 = corner(0, 0), p10 = corner(1, 0), p11 = corner(1, 1), p01 = corner(0, 1);
        triangles.push_back({p00, p10, p11});
        triangles.push_back({p00, p11, p01});
      }
    }
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

}  // namespace casimir::geometry
