#pragma once

#include "casimir/bem/assembly.hpp"
#include "casimir/bem/p1_space.hpp"
#include "casimir/solvers/eigen_pairs.hpp"
#include "casimir/solvers/krylov.hpp"
#include "casimir/solvers/pencil.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace casimir::solvers {

/// Threshold exponent for a gap Z: round(3 + 0.8 (Z - 0.5)) clamped to [3, 6].
int default_s_exp(double z);

struct KrylovOptions {
  Method method = Method::inverse_free;  // arnoldi or inverse_free
  bool recycle = false;
  Eigen::Index m = 100;
  int s_exp = 3;
  double rho = 1.0;  // inverse-free shift
  std::uint64_t seed = kDefaultSeed;
};

/// Throws ConfigError on an unusable option set.
void validate(const KrylovOptions& options);

/// Carried between wavenumbers when recycling.
struct RecycleState {
  Eigen::MatrixXd basis;  // orthonormal columns
  int s_exp = 3;
  Eigen::Index s() const noexcept { return basis.cols(); }
};

/// Solves a sequence of pencils at ascending wavenumbers. Without recycling
/// every node runs the base method at dimension m. With recycling the first
/// node runs the base method; each later node projects onto the thresholded
/// eigenvectors of the previous node, extends the basis once by the Ritz
/// residuals and solves again. A node that inherits no vector restarts the
/// base method.
class KrylovSweep {
public:
  explicit KrylovSweep(KrylovOptions options);

  SolverReport solve(const Pencil& pencil, double k);

  const KrylovOptions& options() const noexcept { return options_; }
  /// s_i per recycled node (nodes 1.. of the sweep), 0 where a restart ran.
  const std::vector<Eigen::Index>& recycled_counts() const noexcept { return recycled_; }
  std::size_t restarts() const noexcept { return restarts_; }
  std::size_t nodes() const noexcept { return nodes_; }

private:
  SolverReport base(const Pencil& pencil, double k);
  SolverReport recycled_step(const Pencil& pencil, double k);
  void carry(const SolverReport& report, const Pencil& pencil);

  KrylovOptions options_;
  RecycleState state_;
  std::vector<Eigen::Index> recycled_;
  std::size_t restarts_ = 0;
  std::size_t nodes_ = 0;
  double last_k_ = -1.0;
};

/// Assembles V at each wavenumber and runs a KrylovSweep over them.
std::vector<SolverReport> recycled_sweep(const bem::P1Space& space, std::span<const double> ks,
                                         const KrylovOptions& options,
                                         const bem::AssemblyOptions& assembly = {});

/// Closed-form matvec totals of a sweep over N_q nodes:
///   inverse-free (6m-2) N_q, recycled (6m-2) + 12 Σ s_i;
///   Arnoldi (4m-4) N_q, recycled (4m-4) + 8 Σ s_i.
/// `restarts` adds one base solve per recycled node that restarted.
std::uint64_t matvec_budget(Method method, bool recycled, Eigen::Index m, Eigen::Index n_q,
                            std::span<const Eigen::Index> s_list, std::size_t restarts = 0);

/// Share of one node in the budget above: the base cost, or 12 s / 8 s for a
/// recycled step with s inherited vectors.
std::uint64_t node_matvec_budget(Method method, bool recycled_step, Eigen::Index m, Eigen::Index s);

}  // namespace casimir::solvers
