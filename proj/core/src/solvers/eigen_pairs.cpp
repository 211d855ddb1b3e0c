#include "casimir/solvers/eigen_pairs.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace casimir::solvers {

namespace {

EigenPairSet take(const EigenPairSet& in, const std::vector<Eigen::Index>& idx) {
  EigenPairSet out;
  const auto n = static_cast<Eigen::Index>(idx.size());
  out.values.resize(n);
  out.logs.resize(n);
  out.residual_norms.resize(n);
  out.vectors.resize(in.vectors.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index s = idx[j];
    out.values[j] = in.values[s];
    out.logs[j] = in.logs[s];
    out.residual_norms[j] = in.residual_norms.size() ? in.residual_norms[s] : 0.0;
    if (in.vectors.cols()) out.vectors.col(j) = in.vectors.col(s);
  }
  if (!in.vectors.cols()) out.vectors.resize(0, 0);
  return out;
}

}  // namespace

void EigenPairSet::sort_by_magnitude() {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(logs[a]) > std::abs(logs[b]);
  });
  *this = take(*this, idx);
}

EigenPairSet EigenPairSet::above_threshold(int s_exp) const {
  const double threshold = std::pow(10.0, -s_exp);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (std::abs(logs[i]) > threshold) idx.push_back(i);
  }
  return take(*this, idx);
}

double xi_from_pairs(const EigenPairSet& pairs, int s_exp) {
  const double threshold = std::pow(10.0, -s_exp);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pairs.size(); ++i) {
    if (std::abs(pairs.logs[i]) > threshold) sum += pairs.logs[i];
  }
  return sum;
}

double xi_from_pairs(std::span<const double> values, int s_exp) {
  const double threshold = std::pow(10.0, -s_exp);
  double sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw NumericalError("eigenvalue " + std::to_string(v) + " is not positive");
    const double l = std::log(v);
    if (std::abs(l) > threshold) sum += l;
  }
  return sum;
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::dense:
      return "dense";
    case Method::arnoldi:
      return "arnoldi";
    case Method::inverse_free:
      return "inverse_free";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "dense") return Method::dense;
  if (name == "arnoldi") return Method::arnoldi;
  if (name == "inverse_free") return Method::inverse_free;
  throw ConfigError("unknown solver method '" + std::string(name) +
                    "' (expected dense, arnoldi or inverse_free)");
}

}  // namespace casimir::solvers
