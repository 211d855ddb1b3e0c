#include "casimir/solvers/dense.hpp"

#include "casimir/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <spdlog/spdlog.h>

#include <cmath>
#include <vector>

namespace casimir::solvers {

namespace {

// C_i^{-1} V_ij C_j^{-T}.
Eigen::MatrixXd whitened_block(const Pencil& pencil, std::size_t i, std::size_t j) {
  Eigen::MatrixXd t = pencil.v().block(i, j);
  pencil.block_factor(i).matrixL().solveInPlace(t);
  pencil.block_factor(j).matrixU().solveInPlace<Eigen::OnTheRight>(t);
  return t;
}

double log_abs_det_lu(const Eigen::MatrixXd& a) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  return lu.matrixLU().diagonal().cwiseAbs().array().log().sum();
}

}  // namespace

SolverReport logdet_dense(const Pencil& pencil, double k) {
  SolverReport report;
  report.k = k;
  report.method = Method::dense;
  report.subspace_dim = pencil.dim();
  const std::size_t n = pencil.num_blocks();
  const auto& v = pencil.v();
  try {
    pencil.factorize();
    if (n == 1) return report;  // V equals its diagonal part
    // Block Cholesky of the whitened operator; its diagonal blocks are I.
    std::vector<std::vector<Eigen::MatrixXd>> lower(n);
    double xi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lower[j].resize(j + 1);
      Eigen::LLT<Eigen::MatrixXd> diag;
      if (j > 0) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Identity(v.block_size(j), v.block_size(j));
        for (std::size_t p = 0; p < j; ++p) {
          s.selfadjointView<Eigen::Lower>().rankUpdate(lower[j][p], -1.0);
        }
        diag.compute(s);
        if (diag.info() != Eigen::Success) {
          throw NumericalError("operator is not positive definite");
        }
        xi += 2.0 * diag.matrixLLT().diagonal().array().log().sum();
      }
      for (std::size_t i = j + 1; i < n; ++i) {
        if (lower[i].empty()) lower[i].resize(i + 1);
        Eigen::MatrixXd t = whitened_block(pencil, i, j);
        for (std::size_t p = 0; p < j; ++p) t.noalias() -= lower[i][p] * lower[j][p].transpose();
        if (j > 0) diag.matrixU().solveInPlace<Eigen::OnTheRight>(t);
        lower[i][j] = std::move(t);
      }
    }
    report.xi = xi;
  } catch (const NumericalError& e) {
    spdlog::warn("k={}: {}; falling back to pivoted LU log|det|", k, e.what());
    double xi = log_abs_det_lu(v.to_dense());
    for (std::size_t j = 0; j < n; ++j) xi -= log_abs_det_lu(v.block(j, j));
    report.xi = xi;
    report.fallback = true;
  }
  return report;
}

Eigen::VectorXd dense_generalized_eigenvalues(const Pencil& pencil) {
  const auto& v = pencil.v();
  const std::size_t n = pencil.num_blocks();
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(v.dim(), v.dim());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      f.block(v.offset(i), v.offset(j), v.block_size(i), v.block_size(j)) =
          whitened_block(pencil, i, j);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  return eig.eigenvalues();
}

}  // namespace casimir::solvers
