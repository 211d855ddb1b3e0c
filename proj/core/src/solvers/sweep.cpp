#include "casimir/solvers/sweep.hpp"

#include "casimir/bem/assembly.hpp"
#include "casimir/errors.hpp"
#include "ritz.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

namespace casimir::solvers {

namespace {

struct Selection {
  EigenPairSet retained;
  Eigen::MatrixXd carried;
};

// Pairs above the threshold, by descending |log λ|, plus the vectors to carry:
// generalized eigenvectors for the inverse-free method, their Ṽ-images for
// Arnoldi (eigenvectors of V Ṽ^{-1}).
Selection select(const detail::Ritz& ritz, int s_exp, bool images) {
  const auto& p = ritz.pairs;
  const double threshold = std::pow(10.0, -s_exp);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (std::abs(p.logs[i]) > threshold) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(p.logs[a]) > std::abs(p.logs[b]);
  });
  const auto r = static_cast<Eigen::Index>(idx.size());
  const Eigen::MatrixXd& source = images ? ritz.images : p.vectors;
  Selection out;
  out.retained.values.resize(r);
  out.retained.logs.resize(r);
  out.retained.residual_norms.resize(r);
  out.retained.vectors.resize(p.vectors.rows(), r);
  out.carried.resize(source.rows(), r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::Index i = idx[static_cast<std::size_t>(j)];
    out.retained.values[j] = p.values[i];
    out.retained.logs[j] = p.logs[i];
    out.retained.residual_norms[j] = p.residual_norms[i];
    out.retained.vectors.col(j) = p.vectors.col(i);
    out.carried.col(j) = source.col(i);
  }
  return out;
}

Eigen::MatrixXd append(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// [W R] with R the residuals orthonormalized against W. Residual columns that
// turn out dependent are replaced by seeded random directions so the extended
// basis always has 2s columns and the step costs exactly its budget.
Eigen::MatrixXd extend(const Eigen::MatrixXd& w, const Eigen::MatrixXd& residuals, std::uint64_t seed) {
  Eigen::MatrixXd q = append(w, orthonormalize(residuals, w));
  const Eigen::Index want = w.cols() + residuals.cols();
  for (std::uint64_t j = 1; q.cols() < want && q.cols() < w.rows(); ++j) {
    q = append(q, orthonormalize(start_vector(w.rows(), seed + j), q));
  }
  return q;
}

}  // namespace

int default_s_exp(double z) {
  if (!std::isfinite(z) || z <= 0.0) throw ConfigError("gap must be positive");
  const auto s = static_cast<int>(std::lround(3.0 + 0.8 * (z - 0.5)));
  return std::clamp(s, 3, 6);
}

void validate(const KrylovOptions& options) {
  if (options.method == Method::dense) throw ConfigError("Krylov sweep needs arnoldi or inverse_free");
  if (options.m < 2) throw ConfigError("Krylov subspace dimension m must be at least 2");
  if (options.s_exp < 1 || options.s_exp > 15) throw ConfigError("s_exp must lie in [1, 15]");
  if (!std::isfinite(options.rho) || options.rho <= 0.0) throw ConfigError("rho must be positive");
}

KrylovSweep::KrylovSweep(KrylovOptions options) : options_(options) {
  validate(options_);
  state_.s_exp = options_.s_exp;
}

SolverReport KrylovSweep::solve(const Pencil& pencil, double k) {
  if (k < last_k_) throw ConfigError("wavenumbers of a sweep must be ascending");
  last_k_ = k;
  pencil.factorize();
  const std::uint64_t before = pencil.matvecs();
  SolverReport report;
  if (!options_.recycle || nodes_ == 0) {
    report = base(pencil, k);
  } else if (state_.s() == 0) {
    spdlog::debug("no eigenvector passed 1e-{} at k = {}; restarting", state_.s_exp, k);
    recycled_.push_back(0);
    ++restarts_;
    report = base(pencil, k);
  } else {
    const Eigen::Index s = state_.s();
    recycled_.push_back(s);
    report = recycled_step(pencil, k);
    report.recycled_count = s;
  }
  ++nodes_;
  report.matvecs = pencil.matvecs() - before;
  return report;
}

SolverReport KrylovSweep::base(const Pencil& pencil, double k) {
  const Eigen::VectorXd start = start_vector(pencil.dim(), options_.seed);
  const bool arnoldi = options_.method == Method::arnoldi;
  const detail::Ritz ritz = arnoldi ? detail::arnoldi_base(pencil, options_.m, start)
                                    : detail::inverse_free_base(pencil, options_.m, options_.rho, start);
  SolverReport report;
  report.k = k;
  report.method = options_.method;
  report.s_exp = options_.s_exp;
  report.seed = options_.seed;
  report.subspace_dim = ritz.pairs.size();
  auto sel = select(ritz, options_.s_exp, arnoldi);
  report.retained = std::move(sel.retained);
  report.xi = report.retained.logs.sum();
  if (options_.recycle) state_.basis = orthonormalize(sel.carried);
  return report;
}

SolverReport KrylovSweep::recycled_step(const Pencil& pencil, double k) {
  const Eigen::MatrixXd& w = state_.basis;
  const bool arnoldi = options_.method == Method::arnoldi;
  detail::Ritz ritz;
  if (arnoldi) {
    const Eigen::MatrixXd ew = detail::shifted_operator(pencil, w);
    const Eigen::MatrixXd g = w.transpose() * ew;
    const auto first = detail::operator_ritz(pencil, w, g, nullptr);
    const Eigen::MatrixXd q = extend(w, first.residuals, options_.seed);
    const Eigen::MatrixXd eq = detail::shifted_operator(pencil, q);
    const Eigen::MatrixXd gq = q.transpose() * eq;
    ritz = detail::operator_ritz(pencil, q, gq, &eq);
  } else {
    const double rho = options_.rho;
    const auto first =
        detail::pencil_ritz(pencil, w, pencil.apply_v(w), pencil.apply_v_diag(w), rho, true);
    const Eigen::MatrixXd q = extend(w, first.residuals, options_.seed);
    ritz = detail::pencil_ritz(pencil, q, pencil.apply_v(q), pencil.apply_v_diag(q), rho, true);
  }
  SolverReport report;
  report.k = k;
  report.method = options_.method;
  report.recycled = true;
  report.s_exp = options_.s_exp;
  report.seed = options_.seed;
  report.subspace_dim = ritz.pairs.size();
  auto sel = select(ritz, options_.s_exp, arnoldi);
  report.retained = std::move(sel.retained);
  report.xi = report.retained.logs.sum();
  state_.basis = orthonormalize(sel.carried);
  return report;
}

std::vector<SolverReport> recycled_sweep(const bem::P1Space& space, std::span<const double> ks,
                                         const KrylovOptions& options,
                                         const bem::AssemblyOptions& assembly) {
  if (!std::is_sorted(ks.begin(), ks.end())) throw ConfigError("wavenumbers must be ascending");
  KrylovSweep sweep(options);
  auto counter = std::make_shared<bem::MatvecCounter>();
  std::vector<SolverReport> reports;
  reports.reserve(ks.size());
  for (const double k : ks) {
    const Pencil pencil(bem::assemble(space, k, assembly), counter);
    reports.push_back(sweep.solve(pencil, k));
  }
  return reports;
}

std::uint64_t matvec_budget(Method method, bool recycled, Eigen::Index m, Eigen::Index n_q,
                            std::span<const Eigen::Index> s_list, std::size_t restarts) {
  if (m < 2) throw ConfigError("Krylov subspace dimension m must be at least 2");
  if (n_q < 1) throw ConfigError("at least one quadrature node is needed");
  std::int64_t base = 0;
  std::int64_t per_vector = 0;
  switch (method) {
    case Method::dense: return 0;
    case Method::inverse_free: base = 6 * m - 2; per_vector = 12; break;
    case Method::arnoldi: base = 4 * m - 4; per_vector = 8; break;
  }
  if (!recycled) return static_cast<std::uint64_t>(base * n_q);
  if (static_cast<Eigen::Index>(s_list.size()) > n_q - 1) {
    throw ConfigError("more recycled counts than recycled nodes");
  }
  std::int64_t sum = 0;
  for (const auto s : s_list) {
    if (s < 0) throw ConfigError("recycled counts must be nonnegative");
    sum += s;
  }
  return static_cast<std::uint64_t>(base + per_vector * sum +
                                    base * static_cast<std::int64_t>(restarts));
}

std::uint64_t node_matvec_budget(Method method, bool recycled_step, Eigen::Index m, Eigen::Index s) {
  const std::vector<Eigen::Index> one{s};
  if (!recycled_step) return matvec_budget(method, false, m, 1, {});
  return matvec_budget(method, true, m, 2, one) - matvec_budget(method, false, m, 1, {});
}

}  // namespace casimir::solvers
