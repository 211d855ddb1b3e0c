#pragma once

#include "casimir/bem/assembly.hpp"
#include "casimir/energy/decay.hpp"
#include "casimir/energy/plan.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry/scene.hpp"
#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/krylov.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace casimir::energy {

struct SolverConfig {
  // Unset: dense up to dense_limit unknowns, recycled inverse-free beyond.
  std::optional<solvers::Method> method;
  bool recycle = true;  // Krylov methods only
  Eigen::Index m = 100;
  std::optional<int> s_exp;  // unset: derived from the gap
  double rho = 1.0;
  std::uint64_t seed = solvers::kDefaultSeed;
  Eigen::Index dense_limit = 4000;
};

struct EnergyConfig {
  SolverConfig solver;
  Eigen::Index n_q = 20;
  double eps = 1e-6;
  std::optional<double> kappa;  // fixed cutoff; skips the pilot fit
  std::vector<double> pilot_ks{0.0, 0.5, 1.0};
  bem::AssemblyOptions assembly;
};

/// Throws ConfigError on unusable settings.
void validate(const EnergyConfig& config);

struct CasimirResult {
  double h = 0.0;
  double gap = 0.0;
  Eigen::Index dim = 0;
  solvers::Method method = solvers::Method::dense;
  bool recycled = false;
  int s_exp = 0;
  std::optional<DecayFit> fit;  // absent when κ was fixed
  QuadraturePlan plan;
  std::vector<solvers::SolverReport> reports;  // one per plan node, in plan order
  Eigen::VectorXd xi;
  double integral = 0.0;
  double energy_normalized = 0.0;  // -I / (2π), positive for attraction
};

/// A failure inside the pipeline; carries the nodes finished before it and
/// keeps the category of the underlying error.
class PipelineError : public Error {
public:
  PipelineError(const Error& cause, CasimirResult partial);
  const CasimirResult& partial() const noexcept { return *partial_; }

private:
  std::shared_ptr<const CasimirResult> partial_;
};

struct PlanChoice {
  QuadraturePlan plan;
  std::optional<DecayFit> fit;                        // absent when κ was fixed
  std::map<double, solvers::SolverReport> pilots;     // keyed by pilot wavenumber
};

/// Quadrature plan from the configured κ, or from a decay fit to pilot
/// values of Ξ computed with `pilot_method` (dense, or inverse-free without
/// recycling at the configured m and s_exp).
PlanChoice choose_plan(const bem::P1Space& space, const EnergyConfig& config,
                       solvers::Method pilot_method, int s_exp);

/// Full pipeline for one meshed scene: pilot fit, cutoff, per-node Ξ and the
/// integral. `h` is recorded only. Requires at least two bodies.
CasimirResult compute_energy(std::shared_ptr<const geometry::Scene> scene, double h,
                             const EnergyConfig& config = {});

/// Method the pipeline would pick for `dim` unknowns.
solvers::Method resolve_method(const SolverConfig& solver, Eigen::Index dim);

struct ExtrapolatedEnergy {
  std::vector<CasimirResult> levels;  // one per h, coarse to fine
  double energy_normalized = 0.0;     // extrapolated when two or more levels exist
  double integral = 0.0;
  bool extrapolated = false;
};

/// Runs compute_energy for each mesh size (strictly decreasing) and
/// extrapolates the two finest energies.
ExtrapolatedEnergy compute_extrapolated(
    const std::function<std::shared_ptr<const geometry::Scene>(double)>& scene_at,
    const std::vector<double>& hs, const EnergyConfig& config = {});

}  // namespace casimir::energy
