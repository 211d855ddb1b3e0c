#include "casimir/bem/assembly.hpp"
#include "casimir/errors.hpp"
#include "casimir/solvers/dense.hpp"
#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/pencil.hpp"

#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace casimir;
using namespace casimir::solvers;

namespace {

bem::BlockMatrix blocks_of(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& sizes) {
  bem::BlockMatrix out(sizes);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      out.set_block(i, j, std::make_shared<const Eigen::MatrixXd>(
                              a.block(out.offset(i), out.offset(j), sizes[i], sizes[j])));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("dense logdet of the 2x2 toy pencil", "[solvers]") {
  Eigen::Matrix2d v;
  v << 2, 1, 1, 2;
  const Pencil pencil(blocks_of(v, {1, 1}));
  const SolverReport report = logdet_dense(pencil);
  CHECK(std::abs(report.xi - std::log(0.75)) <= 1e-15);
  CHECK(report.matvecs == 0);
  CHECK(report.retained.size() == 0);
  CHECK_FALSE(report.fallback);

  const Eigen::VectorXd lambda = dense_generalized_eigenvalues(pencil);
  CHECK(std::abs(lambda[0] - 0.5) <= 1e-15);
  CHECK(std::abs(lambda[1] - 1.5) <= 1e-15);
}

TEST_CASE("dense logdet matches a direct determinant", "[solvers]") {
  const Eigen::Index n = 30;
  Eigen::MatrixXd g = Eigen::MatrixXd::Random(n, n);
  const Eigen::MatrixXd a = g * g.transpose() + n * Eigen::MatrixXd::Identity(n, n);
  const Pencil pencil(blocks_of(a, {12, 8, 10}));
  double expected = std::log(a.determinant());
  expected -= std::log(a.block(0, 0, 12, 12).determinant());
  expected -= std::log(a.block(12, 12, 8, 8).determinant());
  expected -= std::log(a.block(20, 20, 10, 10).determinant());
  CHECK(std::abs(logdet_dense(pencil).xi - expected) <= 1e-12 * std::abs(expected));
  const Eigen::VectorXd lambda = dense_generalized_eigenvalues(pencil);
  CHECK(lambda.minCoeff() > 0.0);
  CHECK(std::abs(lambda.array().log().sum() - expected) <= 1e-11 * std::abs(expected));
}

TEST_CASE("indefinite operator falls back and flags the report", "[solvers]") {
  Eigen::Matrix2d v;
  v << 1, 2, 2, 1;
  const Pencil pencil(blocks_of(v, {1, 1}));
  const SolverReport report = logdet_dense(pencil);
  CHECK(report.fallback);
  CHECK(std::abs(report.xi - std::log(3.0)) <= 1e-14);
}

TEST_CASE("dense Xi on two spheres is negative and decays", "[solvers]") {
  const bem::P1Space space(testing::two_spheres(0.2, 1.5));
  double previous = -1.0;
  for (double k : {0.0, 0.5, 1.0, 1.5}) {
    const Pencil pencil(bem::assemble(space, k));
    const double xi = logdet_dense(pencil, k).xi;
    CHECK(xi < 0.0);
    if (previous < 0.0) CHECK(std::abs(xi) < std::abs(previous));
    previous = xi;
  }
}

TEST_CASE("generalized eigenvalues are positive on sphere scenes", "[solvers]") {
  const bem::P1Space space(testing::two_spheres(0.3, 0.5));
  for (double k : {0.0, 2.0}) {
    const Eigen::VectorXd lambda = dense_generalized_eigenvalues(Pencil(bem::assemble(space, k)));
    CHECK(lambda.minCoeff() > 0.0);
  }
}

TEST_CASE("threshold arithmetic of xi_from_pairs", "[solvers]") {
  const std::vector<double> ones(5, 1.0);
  CHECK(xi_from_pairs(ones, 3) == 0.0);
  const std::vector<double> mixed{std::numbers::e, 1.0 / std::numbers::e, 1.0 + 1e-9};
  CHECK(std::abs(xi_from_pairs(mixed, 5)) <= 1e-15);
  const std::vector<double> kept{0.5, 1.0 + 1e-9};
  CHECK(xi_from_pairs(kept, 10) == Catch::Approx(std::log(0.5) + 1e-9).epsilon(1e-12));
  const std::vector<double> bad{0.5, -1.0};
  CHECK_THROWS_AS(xi_from_pairs(bad, 3), NumericalError);
}

TEST_CASE("method names round trip", "[solvers]") {
  for (auto m : {Method::dense, Method::arnoldi, Method::inverse_free}) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("lanczos"), ConfigError);
}
