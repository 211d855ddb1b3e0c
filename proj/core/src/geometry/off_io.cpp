#include "casimir/geometry/off_io.hpp"

#include "casimir/errors.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace casimir::geometry {

namespace {

// Yields whitespace-separated tokens of non-empty, comment-stripped lines.
class LineReader {
public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw MeshFormatError(source_, line_no_, message);
  }

  std::size_t line() const noexcept { return line_no_; }
  const std::string& source() const noexcept { return source_; }

private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

template <typename T>
T parse_number(const LineReader& reader, const std::string& tok, const char* what) {
  T value{};
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) reader.fail(std::string("invalid ") + what + " '" + tok + "'");
  return value;
}

}  // namespace

SurfaceMesh read_off(std::istream& in, const std::string& source_name) {
  LineReader reader(in, source_name);
  std::vector<std::string> tok;
  if (!reader.next(tok)) reader.fail("empty file: expected 'OFF' header");
  if (tok.size() != 1 || tok[0] != "OFF") reader.fail("expected 'OFF' header");
  if (!reader.next(tok)) reader.fail("missing 'nv nf 0' count line");
  if (tok.size() != 3) reader.fail("count line must be 'nv nf 0'");
  const auto nv = parse_number<long>(reader, tok[0], "vertex count");
  const auto nf = parse_number<long>(reader, tok[1], "face count");
  parse_number<long>(reader, tok[2], "edge count");
  if (nv <= 0 || nf <= 0) reader.fail("vertex and face counts must be positive");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(tok)) reader.fail("unexpected end of file in vertex list");
    if (tok.size() != 3) reader.fail("vertex line must hold three coordinates");
    Vec3 v;
    for (int d = 0; d < 3; ++d) v[d] = parse_number<double>(reader, tok[d], "coordinate");
    vertices.push_back(v);
  }

  std::vector<Triangle> triangles;
  std::vector<std::size_t> face_lines;
  triangles.reserve(static_cast<std::size_t>(nf));
  for (long f = 0; f < nf; ++f) {
    if (!reader.next(tok)) reader.fail("unexpected end of file in face list");
    if (tok.size() != 4 || tok[0] != "3") reader.fail("face line must be '3 i j k'");
    Triangle t{};
    for (int c = 0; c < 3; ++c) {
      const long idx = parse_number<long>(reader, tok[c + 1], "vertex index");
      if (idx < 0 || idx >= nv) {
        reader.fail("vertex index " + tok[c + 1] + " out of range [0, " + std::to_string(nv) + ")");
      }
      t[c] = static_cast<int>(idx);
    }
    triangles.push_back(t);
    face_lines.push_back(reader.line());
  }
  if (reader.next(tok)) reader.fail("unexpected trailing content");

  if (auto defect = find_defect(vertices, triangles)) {
    const std::size_t line = defect->triangle ? face_lines[*defect->triangle] : reader.line();
    throw MeshFormatError(reader.source(), line, defect->message);
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

void write_off(const SurfaceMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open mesh file '" + path.string() + "'");
  return read_off(in, path.string());
}

void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot write mesh file '" + path.string() + "'");
  write_off(mesh, out);
  if (!out) throw GeometryError("failed while writing mesh file '" + path.string() + "'");
}

}  // namespace casimir::geometry
