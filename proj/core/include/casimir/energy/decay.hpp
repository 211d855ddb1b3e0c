#pragma once

#include <span>
#include <vector>

namespace casimir::energy {

struct DecaySample {
  double k = 0.0;
  double xi = 0.0;
};

/// |Ξ(ik)| ≈ C e^{-2Zk} with the slope fixed by the gap Z.
struct DecayFit {
  double c = 0.0;
  double z = 0.0;
  std::vector<DecaySample> samples;  // samples that entered the fit
  double residual = 0.0;             // RMS misfit of log|Ξ|
};

/// Least squares for log C only. Samples with Ξ >= 0 are dropped with a
/// warning; fewer than two usable samples raise NumericalError.
DecayFit fit_decay(std::span<const DecaySample> samples, double z);

/// κ solving C e^{-2Zκ} / (2Z) = eps, clamped to at least 0.5.
double choose_cutoff(const DecayFit& fit, double eps);

inline constexpr double kMinCutoff = 0.5;

}  // namespace casimir::energy
