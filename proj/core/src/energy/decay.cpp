#include "casimir/energy/decay.hpp"

#include "casimir/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

namespace casimir::energy {

DecayFit fit_decay(std::span<const DecaySample> samples, double z) {
  if (!std::isfinite(z) || z <= 0.0) throw ConfigError("decay fit needs a positive gap");
  DecayFit fit;
  fit.z = z;
  for (const auto& s : samples) {
    if (!std::isfinite(s.k) || s.k < 0.0) throw ConfigError("decay samples need k >= 0");
    if (!(s.xi < 0.0)) {
      spdlog::warn("decay fit: dropping sample k = {} with non-negative Xi = {}", s.k, s.xi);
      continue;
    }
    fit.samples.push_back(s);
  }
  if (fit.samples.size() < 2) throw NumericalError("decay fit needs at least two samples with Xi < 0");
  // With the slope fixed, log C is the mean of log|Xi| + 2 Z k.
  double mean = 0.0;
  for (const auto& s : fit.samples) mean += std::log(-s.xi) + 2.0 * z * s.k;
  mean /= static_cast<double>(fit.samples.size());
  double ss = 0.0;
  for (const auto& s : fit.samples) {
    const double r = std::log(-s.xi) + 2.0 * z * s.k - mean;
    ss += r * r;
  }
  fit.c = std::exp(mean);
  fit.residual = std::sqrt(ss / static_cast<double>(fit.samples.size()));
  return fit;
}

double choose_cutoff(const DecayFit& fit, double eps) {
  if (!(eps > 0.0)) throw ConfigError("cutoff tolerance eps must be positive");
  const double kappa = std::log(fit.c / (2.0 * fit.z * eps)) / (2.0 * fit.z);
  return std::max(kappa, kMinCutoff);
}

}  // namespace casimir::energy
