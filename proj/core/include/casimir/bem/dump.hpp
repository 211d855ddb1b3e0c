#pragma once

#include "casimir/bem/block_matrix.hpp"

#include <cstdint>
#include <filesystem>

namespace casimir::bem {

/// Debug dump of an assembled operator: 32-byte header (magic "CBEM1\0\0\0",
/// int64 n, int64 N, double k) followed by the dense n x n matrix, row-major.
void write_dump(const BlockMatrix& v, double k, const std::filesystem::path& path);

struct MatrixDump {
  std::int64_t blocks = 0;
  double k = 0.0;
  Eigen::MatrixXd matrix;
};

MatrixDump read_dump(const std::filesystem::path& path);

}  // namespace casimir::bem
