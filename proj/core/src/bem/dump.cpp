#include "casimir/bem/dump.hpp"

#include "casimir/errors.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace casimir::bem {

namespace {
constexpr std::array<char, 8> kMagic{'C', 'B', 'E', 'M', '1', '\0', '\0', '\0'};
}

void write_dump(const BlockMatrix& v, double k, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot write dump '" + path.string() + "'");
  const std::int64_t n = v.dim();
  const auto blocks = static_cast<std::int64_t>(v.num_blocks());
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&blocks), sizeof blocks);
  out.write(reinterpret_cast<const char*>(&k), sizeof k);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dense = v.to_dense();
  out.write(reinterpret_cast<const char*>(dense.data()),
            static_cast<std::streamsize>(sizeof(double) * dense.size()));
  if (!out) throw NumericalError("failed while writing dump '" + path.string() + "'");
}

MatrixDump read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericalError("cannot open dump '" + path.string() + "'");
  std::array<char, 8> magic{};
  std::int64_t n = 0;
  MatrixDump dump;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&dump.blocks), sizeof dump.blocks);
  in.read(reinterpret_cast<char*>(&dump.k), sizeof dump.k);
  if (!in || magic != kMagic || n <= 0) {
    throw NumericalError("'" + path.string() + "' is not a CBEM1 dump");
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dense(n, n);
  in.read(reinterpret_cast<char*>(dense.data()),
          static_cast<std::streamsize>(sizeof(double) * dense.size()));
  if (!in) throw NumericalError("dump '" + path.string() + "' is truncated");
  dump.matrix = dense;
  return dump;
}

}  // namespace casimir::bem
