#pragma once

#include "config.hpp"

#include <filesystem>

namespace casimir::cli {

struct RunOptions {
  std::filesystem::path out;  // empty: the config's output directory
  int workers = 1;            // concurrent sweep points
};

/// Energies for every sweep point and mesh size; writes integrand.csv,
/// energy.csv, solver.csv and the effective configuration.
void run(const RunConfig& config, const RunOptions& options);

/// Dense reference and each Krylov variant on shared plan nodes; writes the
/// same files with per-node errors and matvec budgets in solver.csv.
void compare(const RunConfig& config, const RunOptions& options);

/// Worker count: CASIMIR_THREADS when set, else the requested count.
int resolve_workers(int requested);

}  // namespace casimir::cli
