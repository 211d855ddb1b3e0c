#include "casimir/bem/quadrature.hpp"

#include "casimir/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace casimir::bem {

namespace {

void add_orbit3(TriangleRule& rule, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  rule.points.push_back({a, a, b});
  rule.points.push_back({a, b, a});
  rule.points.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) rule.weights.push_back(w);
}

void add_orbit6(TriangleRule& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const auto& p : {std::array<double, 3>{a, b, c}, {a, c, b}, {b, a, c},
                        {b, c, a}, {c, a, b}, {c, b, a}}) {
    rule.points.push_back(p);
    rule.weights.push_back(w);
  }
}

// Dunavant's symmetric rules.
TriangleRule build_triangle_rule(int degree) {
  TriangleRule rule;
  rule.degree = degree;
  switch (degree) {
    case 1:
      rule.points.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
      rule.weights.push_back(1.0);
      break;
    case 2:
      add_orbit3(rule, 1.0 / 6, 1.0 / 3);
      break;
    case 4:
      add_orbit3(rule, 0.445948490915965, 0.223381589678011);
      add_orbit3(rule, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      rule.points.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
      rule.weights.push_back(0.225);
      add_orbit3(rule, 0.470142064105115, 0.132394152788506);
      add_orbit3(rule, 0.101286507323456, 0.125939180544827);
      break;
    case 6:
      add_orbit3(rule, 0.249286745170910, 0.116786275726379);
      add_orbit3(rule, 0.063089014491502, 0.050844906370207);
      add_orbit6(rule, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      break;
    default:
      throw ConfigError("unsupported triangle quadrature degree " + std::to_string(degree) +
                        " (supported: 1, 2, 4, 5, 6)");
  }
  return rule;
}

SingularRule build_singular_rule(PairKind kind, int order) {
  std::vector<double> g, w;
  gauss_legendre_01(order, g, w);
  SingularRule rule;
  rule.kind = kind;
  rule.order = order;
  auto push = [&](double x1, double x2, double y1, double y2, double weight) {
    rule.x_bary.push_back({1.0 - x1, x1 - x2, x2});
    rule.y_bary.push_back({1.0 - y1, y1 - y2, y2});
    rule.weights.push_back(weight);
  };
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c) {
        for (int d = 0; d < order; ++d) {
          const double xi = g[a], e1 = g[b], e2 = g[c], e3 = g[d];
          const double ww = w[a] * w[b] * w[c] * w[d];
          switch (kind) {
            case PairKind::coincident: {
              const double jac = ww * xi * xi * xi * e1 * e1 * e2;
              push(xi, xi * (1 - e1 + e1 * e2), xi * (1 - e1 * e2 * e3), xi * (1 - e1), jac);
              push(xi * (1 - e1 * e2 * e3), xi * (1 - e1), xi, xi * (1 - e1 + e1 * e2), jac);
              push(xi, xi * e1 * (1 - e2 + e2 * e3), xi * (1 - e1 * e2), xi * e1 * (1 - e2), jac);
              push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * (1 - e2 + e2 * e3), jac);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * (1 - e2), jac);
              push(xi, xi * e1 * (1 - e2), xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), jac);
              break;
            }
            case PairKind::edge: {
              const double jac = ww * xi * xi * xi * e1 * e1;
              push(xi, xi * e1 * e3, xi * (1 - e1 * e2), xi * e1 * (1 - e2), jac);
              push(xi, xi * e1, xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), jac * e2);
              push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * e2 * e3, jac * e2);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), xi, xi * e1, jac * e2);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * e2, jac * e2);
              break;
            }
            case PairKind::vertex: {
              const double jac = ww * xi * xi * xi * e2;
              push(xi, xi * e1, xi * e2, xi * e2 * e3, jac);
              push(xi * e2, xi * e2 * e3, xi, xi * e1, jac);
              break;
            }
            case PairKind::regular:
              throw ConfigError("regular pairs have no singular rule");
          }
        }
      }
    }
  }
  return rule;
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1 || n > 64) throw ConfigError("Gauss-Legendre order must lie in [1, 64]");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Ascending order on [0, 1].
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

const TriangleRule& triangle_rule(int degree) {
  static const std::map<int, TriangleRule> rules = [] {
    std::map<int, TriangleRule> out;
    for (int d : {1, 2, 4, 5, 6}) out.emplace(d, build_triangle_rule(d));
    return out;
  }();
  auto it = rules.find(degree);
  if (it == rules.end()) build_triangle_rule(degree);  // throws the descriptive error
  return it->second;
}

int next_triangle_degree(int degree) {
  for (int d : {1, 2, 4, 5, 6}) {
    if (d > degree) return d;
  }
  throw ConfigError("no triangle quadrature above degree " + std::to_string(degree));
}

const SingularRule& singular_rule(PairKind kind, int order) {
  if (order < 1 || order > 20) {
    throw ConfigError("singular quadrature order must lie in [1, 20], got " +
                      std::to_string(order));
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, SingularRule> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(static_cast<int>(kind), order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_singular_rule(kind, order)).first;
  return it->second;
}

}  // namespace casimir::bem
