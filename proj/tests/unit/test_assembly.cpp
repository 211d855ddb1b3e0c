#include "casimir/bem/assembly.hpp"
#include "casimir/bem/dump.hpp"
#include "casimir/bem/matvec.hpp"
#include "casimir/errors.hpp"
#include "casimir/solvers/dense.hpp"
#include "casimir/solvers/pencil.hpp"

#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Cholesky>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace casimir;
using namespace casimir::bem;

TEST_CASE("assembled operator is symmetric with SPD diagonal", "[bem]") {
  const P1Space space(testing::two_spheres(0.2, 0.5));
  const BlockMatrix v = assemble(space, 0.8);
  const Eigen::MatrixXd dense = v.to_dense();
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * dense.cwiseAbs().maxCoeff());
  // Congruent bodies share one diagonal block.
  CHECK(v.block_ptr(0, 0) == v.block_ptr(1, 1));
  for (std::size_t i = 0; i < 2; ++i) CHECK(Eigen::LLT<Eigen::MatrixXd>(v.block(i, i)).info() == Eigen::Success);
  CHECK(Eigen::LLT<Eigen::MatrixXd>(dense).info() == Eigen::Success);

  const BlockMatrix diag = diagonal_part(v);
  CHECK(diag.is_block_diagonal());
  CHECK_FALSE(diag.has_block(0, 1));
  CHECK(diag.block_ptr(0, 0) == v.block_ptr(0, 0));
}

TEST_CASE("blocks are transposes across the diagonal", "[bem]") {
  const P1Space space(testing::two_spheres(0.4, 0.7));
  const Eigen::MatrixXd b01 = assemble_block(space, 0.3, 0, 1);
  const Eigen::MatrixXd b10 = assemble_block(space, 0.3, 1, 0);
  CHECK((b01 - b10.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * b01.cwiseAbs().maxCoeff());
}

TEST_CASE("single body gives V equal to its diagonal part", "[bem]") {
  const P1Space space(testing::single_sphere(0.4));
  const BlockMatrix v = assemble(space, 0.5);
  CHECK(v.is_block_diagonal());
  solvers::Pencil pencil(v);
  CHECK(solvers::logdet_dense(pencil).xi == 0.0);
}

TEST_CASE("far-field and decay bounds on the coupling block", "[bem]") {
  const double z = 4.0;
  const auto scene = testing::two_spheres(0.4, z);
  const P1Space space(scene);
  const double zmin = scene->min_distance();
  const double area = scene->world_mesh(0).area();
  for (double k : {2.0, 4.0}) {
    const double entry = assemble_block(space, k, 0, 1).cwiseAbs().maxCoeff();
    CHECK(entry <= area * area * std::exp(-k * zmin) / (4.0 * std::numbers::pi * zmin));
  }

  const auto near = testing::two_spheres(0.3, 0.5);
  const P1Space near_space(near);
  const double zn = near->min_distance();
  double previous_k = 0.0;
  double previous = assemble_block(near_space, 0.0, 0, 1).cwiseAbs().maxCoeff();
  for (double k : {0.5, 1.0, 2.0}) {
    const double current = assemble_block(near_space, k, 0, 1).cwiseAbs().maxCoeff();
    CHECK(current / previous <= std::exp(-(k - previous_k) * zn) * 1.05);
    previous = current;
    previous_k = k;
  }
}

TEST_CASE("body swap permutes the operator", "[bem]") {
  const auto scene = testing::two_spheres(0.4, 0.6);
  const BlockMatrix v = assemble(P1Space(scene), 0.4);
  const auto swapped = std::make_shared<const geometry::Scene>(scene->permuted({1, 0}));
  const BlockMatrix w = assemble(P1Space(swapped), 0.4);
  CHECK((w.block(0, 0) - v.block(1, 1)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((w.block(0, 1) - v.block(1, 0)).cwiseAbs().maxCoeff() <= 1e-14 * v.block(0, 1).cwiseAbs().maxCoeff());
}

TEST_CASE("regular quadrature order is converged at the default", "[bem]") {
  const P1Space space(testing::two_spheres(0.2, 0.5));
  AssemblyOptions higher;
  higher.regular_degree = next_triangle_degree(AssemblyOptions{}.regular_degree);
  solvers::Pencil base(assemble(space, 0.8));
  solvers::Pencil refined(assemble(space, 0.8, higher));
  const double xi = solvers::logdet_dense(base, 0.8).xi;
  const double xi_refined = solvers::logdet_dense(refined, 0.8).xi;
  CHECK(std::abs(xi_refined - xi) <= 1e-4 * std::abs(xi));
}

TEST_CASE("assembly options are validated", "[bem]") {
  const P1Space space(testing::single_sphere(0.5));
  AssemblyOptions bad;
  bad.regular_degree = 3;
  CHECK_THROWS_AS(assemble(space, 0.0, bad), ConfigError);
  bad = {};
  bad.singular_order = 0;
  CHECK_THROWS_AS(assemble(space, 0.0, bad), ConfigError);
  CHECK_THROWS_AS(assemble(space, -1.0), ConfigError);
}

TEST_CASE("matvec counts full-operator applications", "[bem]") {
  const P1Space space(testing::two_spheres(0.5, 0.5));
  const BlockMatrix v = assemble(space, 0.0);
  const BlockMatrix diag = diagonal_part(v);
  MatvecCounter counter;

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(v.dim());
  CHECK(matvec(v, zero, counter).isZero(0.0));
  CHECK(counter.value() == 1);

  Eigen::VectorXd on_first = Eigen::VectorXd::Zero(v.dim());
  on_first.head(space.body_dim(0)).setOnes();
  const Eigen::VectorXd y = matvec(diag, on_first, counter);
  CHECK(y.tail(space.body_dim(1)).isZero(0.0));
  CHECK_FALSE(y.head(space.body_dim(0)).isZero(0.0));

  counter.reset();
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(v.dim(), 7);
  const Eigen::MatrixXd yx = matvec_columns(v, x, counter);
  CHECK(counter.value() == 7);
  CHECK((yx - v.to_dense() * x).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS(matvec(v, Eigen::VectorXd::Zero(3), counter));
}

TEST_CASE("binary dump round trip", "[bem]") {
  const P1Space space(testing::two_spheres(0.5, 0.5));
  const BlockMatrix v = assemble(space, 1.25);
  const auto path = std::filesystem::temp_directory_path() / "casimir_dump_test.bin";
  write_dump(v, 1.25, path);
  CHECK(std::filesystem::file_size(path) == 32 + 8 * static_cast<std::uintmax_t>(v.dim() * v.dim()));
  const MatrixDump dump = read_dump(path);
  CHECK(dump.blocks == 2);
  CHECK(dump.k == 1.25);
  CHECK((dump.matrix.array() == v.to_dense().array()).all());
  std::filesystem::remove(path);
}
