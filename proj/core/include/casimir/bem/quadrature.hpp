#pragma once

#include <array>
#include <vector>

namespace casimir::bem {

/// Symmetric rule on a triangle in barycentric coordinates; weights sum to 1
/// so the physical weight is w * area.
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Supported polynomial degrees: 1 (1 point), 2 (3), 4 (6), 5 (7), 6 (12).
/// Anything else raises ConfigError.
const TriangleRule& triangle_rule(int degree);

/// Next supported degree above `degree` (used by refinement studies).
int next_triangle_degree(int degree);

/// How a pair of triangles touches; decides which pair quadrature applies.
enum class PairKind { regular, vertex, edge, coincident };

/// Tensor Gauss rule on the regularized 4-cube, already mapped back to pairs
/// of points on the reference triangle {0 <= x2 <= x1 <= 1}. For a pair the
/// reference point xh maps to P0 + xh1 (P1 - P0) + xh2 (P2 - P1), where the
/// shared vertices come first in both triangles (P0 for a shared vertex,
/// P0 P1 for a shared edge). Weights sum to 1/4, the squared reference area.
struct SingularRule {
  PairKind kind = PairKind::coincident;
  int order = 0;
  std::vector<std::array<double, 3>> x_bary;  // barycentrics (1 - x1, x1 - x2, x2)
  std::vector<std::array<double, 3>> y_bary;
  std::vector<double> weights;
};

/// Cached rule with `order` Gauss-Legendre points per dimension (1..20).
const SingularRule& singular_rule(PairKind kind, int order);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace casimir::bem
