#include "casimir/geometry/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace casimir::geometry {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Segment p->q against a closed triangle (Moller-Trumbore, both faces).
bool segment_hits_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                           const Vec3& c) {
  const Vec3 dir = q - p;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pv = dir.cross(e2);
  const double det = e1.dot(pv);
  const double scale = e1.norm() * e2.norm() * dir.norm();
  if (std::abs(det) <= 1e-14 * scale) return false;  // parallel; distance tests cover it
  const double inv = 1.0 / det;
  const Vec3 tv = p - a;
  const double u = tv.dot(pv) * inv;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qv = tv.cross(e1);
  const double v = dir.dot(qv) * inv;
  if (v < 0.0 || u + v > 1.0) return false;
  const double t = e2.dot(qv) * inv;
  return t >= 0.0 && t <= 1.0;
}

}  // namespace

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? clamp01((p - a).dot(ab) / len2) : 0.0;
  return (a + t * ab - p).norm();
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Voronoi-region walk of the closest point.
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return ap.norm();

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return bp.norm();

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return (a + (d1 / (d1 - d3)) * ab - p).norm();

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return cp.norm();

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return (a + (d2 / (d2 - d6)) * ac - p).norm();

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (b + w * (c - b) - p).norm();
  }
  const double denom = 1.0 / (va + vb + vc);
  return (a + ab * (vb * denom) + ac * (vc * denom) - p).norm();
}

double segment_segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) return r.norm();
  if (a <= 0.0) {
    t = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? clamp01((b * f - c * e) / denom) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  return (p0 + s * d1 - q0 - t * d2).norm();
}

double triangle_distance(const std::array<Vec3, 3>& a, const std::array<Vec3, 3>& b) {
  for (int e = 0; e < 3; ++e) {
    if (segment_hits_triangle(a[e], a[(e + 1) % 3], b[0], b[1], b[2])) return 0.0;
    if (segment_hits_triangle(b[e], b[(e + 1) % 3], a[0], a[1], a[2])) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int v = 0; v < 3; ++v) {
    best = std::min(best, point_triangle_distance(a[v], b[0], b[1], b[2]));
    best = std::min(best, point_triangle_distance(b[v], a[0], a[1], a[2]));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      best = std::min(best, segment_segment_distance(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3]));
    }
  }
  return best;
}

double surface_distance(const SurfaceMesh& a, const SurfaceMesh& b) {
  struct Sphere {
    Vec3 center;
    double radius;
  };
  auto spheres = [](const SurfaceMesh& m) {
    std::vector<Sphere> out;
    out.reserve(m.num_triangles());
    for (const auto& t : m.triangles()) {
      const Vec3 c = (m.vertices()[t[0]] + m.vertices()[t[1]] + m.vertices()[t[2]]) / 3.0;
      double r = 0.0;
      for (int v : t) r = std::max(r, (m.vertices()[v] - c).norm());
      out.push_back({c, r});
    }
    return out;
  };
  auto corners = [](const SurfaceMesh& m, std::size_t t) {
    const auto& tri = m.triangles()[t];
    return std::array<Vec3, 3>{m.vertices()[tri[0]], m.vertices()[tri[1]], m.vertices()[tri[2]]};
  };
  const auto sa = spheres(a);
  const auto sb = spheres(b);

  // Seed with the pair whose bounding spheres come closest, then prune.
  std::size_t seed_i = 0, seed_j = 0;
  double seed_bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      const double lb = (sa[i].center - sb[j].center).norm() - sa[i].radius - sb[j].radius;
      if (lb < seed_bound) {
        seed_bound = lb;
        seed_i = i;
        seed_j = j;
      }
    }
  }
  double best = triangle_distance(corners(a, seed_i), corners(b, seed_j));
  for (std::size_t i = 0; i < sa.size() && best > 0.0; ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      const double lb = (sa[i].center - sb[j].center).norm() - sa[i].radius - sb[j].radius;
      if (lb >= best) continue;
      best = std::min(best, triangle_distance(corners(a, i), corners(b, j)));
      if (best == 0.0) break;
    }
  }
  return best;
}

bool contains_point(const SurfaceMesh& mesh, const Vec3& p) {
  double total = 0.0;
  for (const auto& t : mesh.triangles()) {
    const Vec3 a = mesh.vertices()[t[0]] - p;
    const Vec3 b = mesh.vertices()[t[1]] - p;
    const Vec3 c = mesh.vertices()[t[2]] - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    total += 2.0 * std::atan2(num, den);
  }
  return std::abs(total / (4.0 * std::numbers::pi)) > 0.5;
}

}  // namespace casimir::geometry
