#include "casimir/solvers/krylov.hpp"

#include "casimir/errors.hpp"
#include "ritz.hpp"

#include <Eigen/Eigenvalues>
#include <spdlog/spdlog.h>

#include <cmath>
#include <random>

namespace casimir::solvers {

namespace {

constexpr double kRankTolerance = 1e-12;

void check_start(const Pencil& pencil, Eigen::Index m, const Eigen::VectorXd& start) {
  if (start.size() != pencil.dim()) throw NumericalError("start vector has the wrong length");
  if (!(start.norm() > 0.0)) throw NumericalError("start vector must be nonzero");
  if (m < 2) throw ConfigError("Krylov subspace dimension m must be at least 2");
}

}  // namespace

Eigen::VectorXd start_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x[i] = 2.0 * u - 1.0;
  }
  return x.normalized();
}

double orthogonalize(const Eigen::MatrixXd& q, Eigen::Index cols, Eigen::VectorXd& w,
                     Eigen::VectorXd* coeffs) {
  if (coeffs) coeffs->setZero(cols);
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double h = q.col(c).dot(w);
      w.noalias() -= h * q.col(c);
      if (coeffs) (*coeffs)[c] += h;
    }
  }
  return w.norm();
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& against) {
  const Eigen::Index base = against.cols();
  Eigen::MatrixXd q(x.rows(), base + x.cols());
  if (base) q.leftCols(base) = against;
  Eigen::Index cols = base;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Eigen::VectorXd w = x.col(j);
    const double before = w.norm();
    if (!(before > 0.0)) continue;
    const double after = orthogonalize(q, cols, w);
    if (after > kRankTolerance * before) q.col(cols++) = w / after;
  }
  return q.middleCols(base, cols - base);
}

namespace detail {

Ritz pencil_ritz(const Pencil& pencil, const Eigen::MatrixXd& q, const Eigen::MatrixXd& vq,
                 const Eigen::MatrixXd& vdq, double rho, bool explicit_residuals) {
  Eigen::MatrixXd a = q.transpose() * (vq - rho * vdq);
  Eigen::MatrixXd b = q.transpose() * vdq;
  a = 0.5 * (a + a.transpose()).eval();
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::VectorXd shifted;
  Eigen::MatrixXd y;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(a, b);
  if (ges.info() == Eigen::Success) {
    shifted = ges.eigenvalues();
    y = ges.eigenvectors();
  } else {
    // Projected Ṽ numerically singular: restrict to its numerical range.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b);
    const Eigen::VectorXd mu = eb.eigenvalues();
    const double cut = kRankTolerance * mu.cwiseAbs().maxCoeff();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) r += mu[i] > cut ? 1 : 0;
    spdlog::warn("projected pencil is singular; reducing subspace from {} to {}", mu.size(), r);
    const Eigen::MatrixXd t = eb.eigenvectors().rightCols(r) *
                              mu.tail(r).cwiseSqrt().cwiseInverse().asDiagonal();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(t.transpose() * a * t);
    shifted = ea.eigenvalues();
    y = t * ea.eigenvectors();
  }

  Ritz out;
  const Eigen::Index p = shifted.size();
  out.pairs.values = shifted.array() + rho;
  out.pairs.logs.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) out.pairs.logs[i] = std::log1p(shifted[i] + (rho - 1.0));
  out.pairs.vectors = q * y;
  Eigen::MatrixXd vx, vdx;
  if (explicit_residuals) {
    vx = pencil.apply_v(out.pairs.vectors);
    vdx = pencil.apply_v_diag(out.pairs.vectors);
  } else {
    vx = vq * y;
    vdx = vdq * y;
  }
  out.residuals = vx - vdx * out.pairs.values.asDiagonal();
  out.pairs.residual_norms = out.residuals.colwise().norm().transpose();
  return out;
}

Eigen::MatrixXd shifted_operator(const Pencil& pencil, const Eigen::MatrixXd& q) {
  const Eigen::MatrixXd u = pencil.solve_v_diag(q);
  return pencil.apply_v(u) - pencil.apply_v_diag(u);
}

Ritz operator_ritz(const Pencil& pencil, const Eigen::MatrixXd& q, const Eigen::MatrixXd& g,
                   const Eigen::MatrixXd* eq) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success) throw NumericalError("Hessenberg eigensolver did not converge");
  const Eigen::VectorXd theta = es.eigenvalues().real();
  Eigen::MatrixXd y = es.eigenvectors().real();
  for (Eigen::Index i = 0; i < y.cols(); ++i) {
    const double nrm = y.col(i).norm();
    if (nrm > 0.0) y.col(i) /= nrm;
  }
  Eigen::MatrixXd z = q * y;
  Eigen::MatrixXd x = pencil.solve_v_diag(z);
  // Scale so that x^T Ṽ x = x^T z = 1.
  Eigen::VectorXd scale(x.cols());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double xz = x.col(i).dot(z.col(i));
    if (!(xz > 0.0)) throw NumericalError("Ritz vector has non-positive Ṽ-norm");
    scale[i] = std::sqrt(xz);
  }
  x = x * scale.cwiseInverse().asDiagonal();

  Ritz out;
  const Eigen::Index p = theta.size();
  out.pairs.values = theta.array() + 1.0;
  out.pairs.logs.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) out.pairs.logs[i] = std::log1p(theta[i]);
  if (eq) {
    // (M - λ) z = (M - I) Q y - θ Q y, and V x - λ Ṽ x equals it divided by the scale.
    out.residuals = ((*eq) * y - z * theta.asDiagonal()) * scale.cwiseInverse().asDiagonal();
  } else {
    const Eigen::MatrixXd vx = pencil.apply_v(x);
    const Eigen::MatrixXd vdx = pencil.apply_v_diag(x);
    out.residuals = vx - vdx * out.pairs.values.asDiagonal();
  }
  out.images = z * scale.cwiseInverse().asDiagonal();
  out.pairs.vectors = std::move(x);
  out.pairs.residual_norms = out.residuals.colwise().norm().transpose();
  return out;
}

Ritz arnoldi_base(const Pencil& pencil, Eigen::Index m, const Eigen::VectorXd& start) {
  check_start(pencil, m, start);
  const Eigen::Index n = pencil.dim();
  const Eigen::Index steps = m >= n ? n : m - 1;
  Eigen::MatrixXd q(n, steps + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(steps + 1, steps);
  q.col(0) = start.normalized();
  Eigen::Index p = steps;
  Eigen::VectorXd coeffs;
  for (Eigen::Index j = 0; j < steps; ++j) {
    Eigen::VectorXd w = shifted_operator(pencil, q.col(j));
    const double before = w.norm();
    const double after = orthogonalize(q, j + 1, w, &coeffs);
    h.col(j).head(j + 1) = coeffs;
    if (!(after > kRankTolerance * before)) {
      p = j + 1;  // invariant subspace found
      break;
    }
    h(j + 1, j) = after;
    q.col(j + 1) = w / after;
  }
  return operator_ritz(pencil, q.leftCols(p), h.topLeftCorner(p, p), nullptr);
}

Ritz inverse_free_base(const Pencil& pencil, Eigen::Index m, double rho,
                       const Eigen::VectorXd& start) {
  check_start(pencil, m, start);
  const Eigen::Index target = std::min(m, pencil.dim());
  Eigen::MatrixXd z(pencil.dim(), target);
  z.col(0) = start.normalized();
  Eigen::Index p = 1;
  for (Eigen::Index j = 0; j + 1 < target; ++j) {
    Eigen::VectorXd w = pencil.apply_v(z.col(j)) - rho * pencil.apply_v_diag(z.col(j));
    const double before = w.norm();
    const double after = orthogonalize(z, j + 1, w);
    if (!(after > kRankTolerance * before)) break;
    z.col(j + 1) = w / after;
    p = j + 2;
  }
  const Eigen::MatrixXd basis = z.leftCols(p);
  const Eigen::MatrixXd vz = pencil.apply_v(basis);
  const Eigen::MatrixXd vdz = pencil.apply_v_diag(basis);
  return pencil_ritz(pencil, basis, vz, vdz, rho, true);
}

}  // namespace detail

EigenPairSet arnoldi_eigs(const Pencil& pencil, Eigen::Index m, const Eigen::VectorXd& start) {
  auto pairs = detail::arnoldi_base(pencil, m, start).pairs;
  pairs.sort_by_magnitude();
  return pairs;
}

EigenPairSet inverse_free_eigs(const Pencil& pencil, Eigen::Index m, double rho,
                               const Eigen::VectorXd& start) {
  auto pairs = detail::inverse_free_base(pencil, m, rho, start).pairs;
  pairs.sort_by_magnitude();
  return pairs;
}

}  // namespace casimir::solvers
