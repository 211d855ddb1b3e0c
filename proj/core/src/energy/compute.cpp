#include "casimir/energy/compute.hpp"

#include "casimir/bem/p1_space.hpp"
#include "casimir/energy/richardson.hpp"
#include "casimir/solvers/dense.hpp"
#include "casimir/solvers/sweep.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace casimir::energy {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

solvers::KrylovOptions krylov_options(const SolverConfig& solver, solvers::Method method, bool recycle,
                                      int s_exp) {
  solvers::KrylovOptions o;
  o.method = method;
  o.recycle = recycle;
  o.m = solver.m;
  o.s_exp = s_exp;
  o.rho = solver.rho;
  o.seed = solver.seed;
  return o;
}

void finish(CasimirResult& result) {
  const auto n = static_cast<Eigen::Index>(result.reports.size());
  result.xi.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) result.xi[j] = result.reports[static_cast<std::size_t>(j)].xi;
  if (n == result.plan.size() && n > 0) {
    result.integral = result.plan.integrate(result.xi);
    result.energy_normalized = -result.integral / (2.0 * std::numbers::pi);
  }
}

}  // namespace

void validate(const EnergyConfig& config) {
  if (config.n_q < 2) throw ConfigError("quadrature needs at least two nodes");
  if (!(config.eps > 0.0)) throw ConfigError("eps must be positive");
  if (config.kappa && !(*config.kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (!config.kappa && config.pilot_ks.size() < 2) throw ConfigError("the decay fit needs two pilot wavenumbers");
  for (const double k : config.pilot_ks) {
    if (!std::isfinite(k) || k < 0.0) throw ConfigError("pilot wavenumbers must be non-negative");
  }
  if (config.solver.dense_limit < 1) throw ConfigError("dense_limit must be positive");
  if (config.solver.method != solvers::Method::dense) {
    solvers::validate(krylov_options(config.solver, solvers::Method::inverse_free, config.solver.recycle,
                                     config.solver.s_exp.value_or(3)));
  }
  bem::validate(config.assembly);
}

PipelineError::PipelineError(const Error& cause, CasimirResult partial)
    : Error(cause.category(), cause.what()),
      partial_(std::make_shared<const CasimirResult>(std::move(partial))) {}

solvers::Method resolve_method(const SolverConfig& solver, Eigen::Index dim) {
  if (solver.method) return *solver.method;
  return dim <= solver.dense_limit ? solvers::Method::dense : solvers::Method::inverse_free;
}

PlanChoice choose_plan(const bem::P1Space& space, const EnergyConfig& config,
                       solvers::Method pilot_method, int s_exp) {
  PlanChoice choice;
  double kappa = 0.0;
  if (config.kappa) {
    kappa = *config.kappa;
  } else {
    const double gap = space.scene().min_distance();
    auto counter = std::make_shared<bem::MatvecCounter>();
    const auto krylov = krylov_options(config.solver, solvers::Method::inverse_free, false, s_exp);
    std::vector<DecaySample> samples;
    for (const double k : config.pilot_ks) {
      const solvers::Pencil pencil(bem::assemble(space, k, config.assembly), counter);
      solvers::SolverReport report;
      if (pilot_method == solvers::Method::dense) {
        report = solvers::logdet_dense(pencil, k);
      } else {
        solvers::KrylovSweep single(krylov);
        report = single.solve(pencil, k);
      }
      spdlog::debug("pilot k = {} Xi = {:.6e}", k, report.xi);
      samples.push_back({k, report.xi});
      choice.pilots.emplace(k, std::move(report));
    }
    choice.fit = fit_decay(samples, gap);
    kappa = choose_cutoff(*choice.fit, config.eps);
    spdlog::info("decay fit C = {:.4e}, Z = {}, kappa = {:.4f}", choice.fit->c, gap, kappa);
  }
  choice.plan = make_plan(kappa, config.n_q);
  return choice;
}

CasimirResult compute_energy(std::shared_ptr<const geometry::Scene> scene, double h,
                             const EnergyConfig& config) {
  validate(config);
  if (!scene) throw ConfigError("no scene given");
  if (scene->num_bodies() < 2) throw ConfigError("the Casimir energy needs at least two bodies");
  const bem::P1Space space(scene);

  CasimirResult result;
  result.h = h;
  result.gap = scene->min_distance();
  result.dim = space.dim();
  result.method = resolve_method(config.solver, result.dim);
  const bool dense = result.method == solvers::Method::dense;
  result.recycled = !dense && config.solver.recycle;
  result.s_exp = config.solver.s_exp.value_or(solvers::default_s_exp(result.gap));
  auto counter = std::make_shared<bem::MatvecCounter>();

  PlanChoice choice;
  try {
    choice = choose_plan(space, config, dense ? solvers::Method::dense : solvers::Method::inverse_free,
                         result.s_exp);
    result.fit = choice.fit;
    result.plan = choice.plan;

    std::optional<solvers::KrylovSweep> sweep;
    if (!dense) sweep.emplace(krylov_options(config.solver, result.method, result.recycled, result.s_exp));

    for (Eigen::Index j = 0; j < result.plan.size(); ++j) {
      const auto t0 = Clock::now();
      const double k = result.plan.k[j];
      solvers::SolverReport report;
      if (auto hit = choice.pilots.find(k); dense && hit != choice.pilots.end()) {
        report = hit->second;
      } else {
        const solvers::Pencil pencil(bem::assemble(space, k, config.assembly), counter);
        report = dense ? solvers::logdet_dense(pencil, k) : sweep->solve(pencil, k);
      }
      if (report.fallback) spdlog::warn("node {}: block Cholesky failed, used pivoted LU", j);
      spdlog::info("h = {} node {}/{} k = {:.4f} Xi = {:.6e} ({:.2f} s)", h, j + 1, result.plan.size(), k,
                   report.xi, seconds_since(t0));
      result.reports.push_back(std::move(report));
    }
  } catch (const Error& e) {
    finish(result);
    throw PipelineError(e, std::move(result));
  }
  finish(result);
  if (result.energy_normalized < 0.0) {
    spdlog::warn("negative normalized energy {} (repulsive result)", result.energy_normalized);
  }
  return result;
}

ExtrapolatedEnergy compute_extrapolated(
    const std::function<std::shared_ptr<const geometry::Scene>(double)>& scene_at,
    const std::vector<double>& hs, const EnergyConfig& config) {
  if (hs.empty()) throw ConfigError("at least one mesh size is needed");
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (!(hs[i] < hs[i - 1])) throw ConfigError("mesh sizes must be strictly decreasing");
  }
  ExtrapolatedEnergy out;
  for (const double h : hs) out.levels.push_back(compute_energy(scene_at(h), h, config));
  const auto& fine = out.levels.back();
  out.energy_normalized = fine.energy_normalized;
  out.integral = fine.integral;
  if (out.levels.size() >= 2) {
    const auto& coarse = out.levels[out.levels.size() - 2];
    out.energy_normalized =
        richardson(coarse.energy_normalized, fine.energy_normalized, coarse.h, fine.h);
    out.integral = richardson(coarse.integral, fine.integral, coarse.h, fine.h);
    out.extrapolated = true;
  }
  return out;
}

}  // namespace casimir::energy
