#include "casimir/bem/assembly.hpp"

#include "casimir/bem/kernel.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace casimir::bem {

using geometry::SurfaceMesh;
using geometry::Vec3;

namespace {

constexpr int kChunk = 256;  // elements per kernel tile

// Quadrature points and weighted hat values of every element of one mesh.
struct ElementData {
  int points = 0;
  std::vector<double> px, py, pz;     // [element * points + p]
  std::vector<double> phi;            // [(element * points + p) * 3 + a], includes w * area
  std::vector<geometry::Triangle> tri;
  std::vector<std::array<Vec3, 3>> corners;
  std::size_t size() const { return tri.size(); }
};

ElementData element_data(const SurfaceMesh& mesh, const TriangleRule& rule) {
  ElementData d;
  d.points = static_cast<int>(rule.points.size());
  const std::size_t n = mesh.num_triangles();
  d.px.resize(n * d.points);
  d.py.resize(n * d.points);
  d.pz.resize(n * d.points);
  d.phi.resize(n * d.points * 3);
  d.tri = mesh.triangles();
  d.corners.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const auto& t = d.tri[e];
    d.corners[e] = {mesh.vertices()[t[0]], mesh.vertices()[t[1]], mesh.vertices()[t[2]]};
    const double area = mesh.triangle_area(e);
    for (int p = 0; p < d.points; ++p) {
      const auto& b = rule.points[p];
      const Vec3 x = b[0] * d.corners[e][0] + b[1] * d.corners[e][1] + b[2] * d.corners[e][2];
      const std::size_t idx = e * d.points + p;
      d.px[idx] = x.x();
      d.py[idx] = x.y();
      d.pz[idx] = x.z();
      for (int a = 0; a < 3; ++a) d.phi[idx * 3 + a] = rule.weights[p] * area * b[a];
    }
  }
  return d;
}

// Greedy colouring so that elements of one colour share no vertex; rows
// written for different elements of a colour are then disjoint.
std::vector<std::vector<int>> colour_elements(const SurfaceMesh& mesh) {
  std::vector<std::vector<int>> vertex_elements(mesh.num_vertices());
  for (std::size_t e = 0; e < mesh.num_triangles(); ++e) {
    for (int v : mesh.triangles()[e]) vertex_elements[v].push_back(static_cast<int>(e));
  }
  std::vector<int> colour(mesh.num_triangles(), -1);
  std::vector<std::vector<int>> classes;
  std::vector<char> taken;
  for (std::size_t e = 0; e < mesh.num_triangles(); ++e) {
    taken.assign(classes.size() + 1, 0);
    for (int v : mesh.triangles()[e]) {
      for (int other : vertex_elements[v]) {
        if (colour[other] >= 0) taken[colour[other]] = 1;
      }
    }
    const int c = static_cast<int>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
    if (c == static_cast<int>(classes.size())) classes.emplace_back();
    classes[c].push_back(static_cast<int>(e));
    colour[e] = c;
  }
  return classes;
}

struct Workspace {
  std::vector<double> g;
  std::vector<double> u;
};

// out(tri_a[tau][a], tri_b[s][b]) += local(tau, s) for s in [s0, s1) unless skip(s).
template <typename Skip>
void regular_row(const ElementData& A, int tau, const ElementData& B, int s0, int s1, double k,
                 Eigen::MatrixXd& out, Workspace& ws, Skip skip) {
  const int pa = A.points;
  const int pb = B.points;
  ws.g.resize(static_cast<std::size_t>(pa) * kChunk * pb);
  ws.u.resize(static_cast<std::size_t>(3) * kChunk * pb);
  for (int c0 = s0; c0 < s1; c0 += kChunk) {
    const int c1 = std::min(s1, c0 + kChunk);
    const int len = (c1 - c0) * pb;
    const double* bx = B.px.data() + static_cast<std::size_t>(c0) * pb;
    const double* by = B.py.data() + static_cast<std::size_t>(c0) * pb;
    const double* bz = B.pz.data() + static_cast<std::size_t>(c0) * pb;
    for (int p = 0; p < pa; ++p) {
      const std::size_t ia = static_cast<std::size_t>(tau) * pa + p;
      const double x = A.px[ia], y = A.py[ia], z = A.pz[ia];
      double* g = ws.g.data() + static_cast<std::size_t>(p) * len;
#pragma omp simd
      for (int t = 0; t < len; ++t) {
        const double dx = x - bx[t], dy = y - by[t], dz = z - bz[t];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        g[t] = std::exp(-k * r) / r;
      }
    }
    for (int a = 0; a < 3; ++a) {
      double* u = ws.u.data() + static_cast<std::size_t>(a) * len;
      std::fill(u, u + len, 0.0);
      for (int p = 0; p < pa; ++p) {
        const double w = A.phi[(static_cast<std::size_t>(tau) * pa + p) * 3 + a];
        const double* g = ws.g.data() + static_cast<std::size_t>(p) * len;
#pragma omp simd
        for (int t = 0; t < len; ++t) u[t] += w * g[t];
      }
    }
    for (int s = c0; s < c1; ++s) {
      if (skip(s)) continue;
      const std::size_t off = static_cast<std::size_t>(s - c0) * pb;
      const double* phib = B.phi.data() + static_cast<std::size_t>(s) * pb * 3;
      for (int a = 0; a < 3; ++a) {
        const double* u = ws.u.data() + static_cast<std::size_t>(a) * len + off;
        double l0 = 0.0, l1 = 0.0, l2 = 0.0;
        for (int q = 0; q < pb; ++q) {
          l0 += u[q] * phib[q * 3 + 0];
          l1 += u[q] * phib[q * 3 + 1];
          l2 += u[q] * phib[q * 3 + 2];
        }
        const int row = A.tri[tau][a];
        out(row, B.tri[s][0]) += kInvFourPi * l0;
        out(row, B.tri[s][1]) += kInvFourPi * l1;
        out(row, B.tri[s][2]) += kInvFourPi * l2;
      }
    }
  }
}

// Reorders the corners so shared vertices come first; returns the kind and
// the permuted global vertex ids.
PairKind order_touching(const geometry::Triangle& a, const geometry::Triangle& b,
                        std::array<int, 3>& pa, std::array<int, 3>& pb) {
  std::array<int, 3> shared{};
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::find(b.begin(), b.end(), a[i]) != b.end()) shared[count++] = a[i];
  }
  auto arrange = [&](const geometry::Triangle& t, std::array<int, 3>& out) {
    int pos = 0;
    for (int i = 0; i < count; ++i) out[pos++] = shared[i];
    for (int v : t) {
      if (std::find(shared.begin(), shared.begin() + count, v) == shared.begin() + count) {
        out[pos++] = v;
      }
    }
  };
  if (count == 3) {
    pa = a;
    pb = a;
    return PairKind::coincident;
  }
  arrange(a, pa);
  arrange(b, pb);
  return count == 2 ? PairKind::edge : count == 1 ? PairKind::vertex : PairKind::regular;
}

Eigen::MatrixXd assemble_self(const SurfaceMesh& mesh, double k, const AssemblyOptions& opt) {
  const ElementData data = element_data(mesh, triangle_rule(opt.regular_degree));
  const auto classes = colour_elements(mesh);
  std::vector<std::vector<int>> vertex_elements(mesh.num_vertices());
  for (std::size_t e = 0; e < data.size(); ++e) {
    for (int v : data.tri[e]) vertex_elements[v].push_back(static_cast<int>(e));
  }
  const auto n = static_cast<Eigen::Index>(mesh.num_vertices());
  const int ne = static_cast<int>(data.size());
  // Unordered pairs (tau <= sigma) accumulate into rows of tau only; the
  // operator is then S + S^T, which is exactly symmetric.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  const auto& verts = mesh.vertices();

#pragma omp parallel
  {
    Workspace ws;
    std::vector<int> mark(ne, -1);
    std::vector<int> neighbours;
    for (const auto& cls : classes) {
#pragma omp for schedule(dynamic, 8)
      for (std::size_t idx = 0; idx < cls.size(); ++idx) {
        const int tau = cls[idx];
        neighbours.clear();
        for (int v : data.tri[tau]) {
          for (int other : vertex_elements[v]) {
            if (mark[other] != tau) {
              mark[other] = tau;
              if (other > tau) neighbours.push_back(other);
            }
          }
        }
        regular_row(data, tau, data, tau + 1, ne, k, s, ws,
                    [&](int sigma) { return mark[sigma] == tau; });
        std::sort(neighbours.begin(), neighbours.end());
        for (int sigma : neighbours) {
          std::array<int, 3> ia{}, ib{};
          const PairKind kind = order_touching(data.tri[tau], data.tri[sigma], ia, ib);
          const Eigen::Matrix3d local =
              singular_pair_matrix(kind, {verts[ia[0]], verts[ia[1]], verts[ia[2]]},
                                   {verts[ib[0]], verts[ib[1]], verts[ib[2]]}, k,
                                   opt.singular_order);
          for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) s(ia[a], ib[b]) += local(a, b);
          }
        }
        const auto& t = data.tri[tau];
        const Eigen::Matrix3d self = singular_pair_matrix(
            PairKind::coincident, data.corners[tau], data.corners[tau], k, opt.singular_order);
        const Eigen::Matrix3d half = 0.25 * (self + self.transpose());
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) s(t[a], t[b]) += half(a, b);
        }
      }
    }
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c; r < n; ++r) {
      const double v = s(r, c) + s(c, r);
      s(r, c) = v;
      s(c, r) = v;
    }
  }
  return s;
}

Eigen::MatrixXd assemble_coupling(const SurfaceMesh& rows, const SurfaceMesh& cols, double k,
                                  const AssemblyOptions& opt) {
  const TriangleRule& rule = triangle_rule(opt.regular_degree);
  const ElementData a = element_data(rows, rule);
  const ElementData b = element_data(cols, rule);
  const auto classes = colour_elements(rows);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.num_vertices()),
                                              static_cast<Eigen::Index>(cols.num_vertices()));
  const int nb = static_cast<int>(b.size());
#pragma omp parallel
  {
    Workspace ws;
    for (const auto& cls : classes) {
#pragma omp for schedule(dynamic, 8)
      for (std::size_t idx = 0; idx < cls.size(); ++idx) {
        regular_row(a, cls[idx], b, 0, nb, k, out, ws, [](int) { return false; });
      }
    }
  }
  return out;
}

}  // namespace

void validate(const AssemblyOptions& options) {
  triangle_rule(options.regular_degree);
  singular_rule(PairKind::vertex, options.singular_order);
  singular_rule(PairKind::edge, options.singular_order);
  singular_rule(PairKind::coincident, options.singular_order);
}

Eigen::Matrix3d singular_pair_matrix(PairKind kind, const std::array<Vec3, 3>& p,
                                     const std::array<Vec3, 3>& q, double k, int order) {
  if (kind == PairKind::regular) return regular_pair_matrix(p, q, k, 4);
  const SingularRule& rule = singular_rule(kind, order);
  const double jp = (p[1] - p[0]).cross(p[2] - p[0]).norm();
  const double jq = (q[1] - q[0]).cross(q[2] - q[0]).norm();
  double acc[3][3] = {};
  const std::size_t npts = rule.weights.size();
  for (std::size_t t = 0; t < npts; ++t) {
    const auto& xb = rule.x_bary[t];
    const auto& yb = rule.y_bary[t];
    double d[3];
    for (int c = 0; c < 3; ++c) {
      d[c] = xb[0] * p[0][c] + xb[1] * p[1][c] + xb[2] * p[2][c] -
             (yb[0] * q[0][c] + yb[1] * q[1][c] + yb[2] * q[2][c]);
    }
    const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const double g = rule.weights[t] * std::exp(-k * r) / r;
    for (int a = 0; a < 3; ++a) {
      const double ga = g * xb[a];
      for (int b = 0; b < 3; ++b) acc[a][b] += ga * yb[b];
    }
  }
  Eigen::Matrix3d out;
  const double scale = kInvFourPi * jp * jq;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out(a, b) = scale * acc[a][b];
  }
  return out;
}

Eigen::Matrix3d regular_pair_matrix(const std::array<Vec3, 3>& p, const std::array<Vec3, 3>& q,
                                    double k, int degree) {
  const TriangleRule& rule = triangle_rule(degree);
  const double ap = 0.5 * (p[1] - p[0]).cross(p[2] - p[0]).norm();
  const double aq = 0.5 * (q[1] - q[0]).cross(q[2] - q[0]).norm();
  Eigen::Matrix3d out = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    const auto& bi = rule.points[i];
    const Vec3 x = bi[0] * p[0] + bi[1] * p[1] + bi[2] * p[2];
    for (std::size_t j = 0; j < rule.weights.size(); ++j) {
      const auto& bj = rule.points[j];
      const Vec3 y = bj[0] * q[0] + bj[1] * q[1] + bj[2] * q[2];
      const double g = rule.weights[i] * rule.weights[j] * kernel(k, x, y);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) out(a, b) += g * bi[a] * bj[b];
      }
    }
  }
  return out * (ap * aq);
}

Eigen::MatrixXd assemble_block(const P1Space& space, double k, std::size_t i, std::size_t j,
                               const AssemblyOptions& options) {
  if (!(k >= 0.0)) throw ConfigError("wavenumber k must be nonnegative");
  validate(options);
  const auto& scene = space.scene();
  if (i >= scene.num_bodies() || j >= scene.num_bodies()) {
    throw ConfigError("body index out of range in assemble_block");
  }
  if (i == j) return assemble_self(scene.world_mesh(i), k, options);
  return assemble_coupling(scene.world_mesh(i), scene.world_mesh(j), k, options);
}

BlockMatrix assemble(const P1Space& space, double k, const AssemblyOptions& options) {
  if (!(k >= 0.0)) throw ConfigError("wavenumber k must be nonnegative");
  validate(options);
  const auto& scene = space.scene();
  const std::size_t n = scene.num_bodies();
  BlockMatrix out(space.block_sizes());
  for (std::size_t i = 0; i < n; ++i) {
    BlockMatrix::Block shared;
    for (std::size_t prev = 0; prev < i && !shared; ++prev) {
      if (scene.congruent(prev, i)) shared = out.block_ptr(prev, prev);
    }
    if (!shared) {
      shared = std::make_shared<const Eigen::MatrixXd>(assemble_self(scene.world_mesh(i), k, options));
    }
    out.set_block(i, i, shared);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto upper = std::make_shared<const Eigen::MatrixXd>(
          assemble_coupling(scene.world_mesh(i), scene.world_mesh(j), k, options));
      out.set_block(j, i, std::make_shared<const Eigen::MatrixXd>(upper->transpose()));
      out.set_block(i, j, std::move(upper));
    }
  }
  return out;
}

}  // namespace casimir::bem
