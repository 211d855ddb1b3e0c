#include "casimir/errors.hpp"
#include "casimir/geometry/generators.hpp"
#include "casimir/geometry/off_io.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

using namespace casimir;
using namespace casimir::geometry;

namespace {

MeshFormatError parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_off(in, "test.off");
  } catch (const MeshFormatError& e) {
    return e;
  }
  FAIL("expected a MeshFormatError");
  throw;  // unreachable
}

const char* kTetrahedron =
    "OFF\n"
    "# unit tetrahedron\n"
    "4 4 0\n"
    "0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
    "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";

}  // namespace

TEST_CASE("OFF round trip is exact", "[geometry]") {
  for (const auto& mesh : {make_box({1, 1, 1}, 0.3), make_sphere(1.0, 0.3)}) {
    std::stringstream buffer;
    write_off(mesh, buffer);
    const auto back = read_off(buffer);
    CHECK(back.triangles() == mesh.triangles());
    REQUIRE(back.num_vertices() == mesh.num_vertices());
    for (std::size_t i = 0; i < mesh.num_vertices(); ++i)
      CHECK((back.vertices()[i].array() == mesh.vertices()[i].array()).all());
  }
}

TEST_CASE("OFF files on disk", "[geometry]") {
  const auto path = std::filesystem::temp_directory_path() / "casimir_off_roundtrip.off";
  const auto cube = make_box({1, 1, 1}, 0.5);
  save_mesh(cube, path);
  CHECK(load_mesh(path).triangles() == cube.triangles());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_mesh(path), GeometryError);
}

TEST_CASE("OFF parser accepts comments and blank lines", "[geometry]") {
  std::istringstream in(kTetrahedron);
  const auto mesh = read_off(in);
  CHECK(mesh.num_triangles() == 4);
}

TEST_CASE("OFF parse errors carry line numbers", "[geometry]") {
  CHECK(parse_error("").line() == 0);
  CHECK(std::string(parse_error("").what()).find("test.off") != std::string::npos);
  CHECK(parse_error("PLY\n").line() == 1);

  std::string bad_index = kTetrahedron;
  bad_index.replace(bad_index.find("3 1 2 3"), 7, "3 1 2 9");
  CHECK(parse_error(bad_index).line() == 11);

  // An extra face glued onto edge 0-1 makes it shared by three triangles.
  const std::string non_manifold =
      "OFF\n5 5 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 -1 0\n"
      "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n3 0 1 4\n";
  const auto e = parse_error(non_manifold);
  CHECK(e.line() >= 8);
  CHECK(e.line() <= 12);

  std::string open = "OFF\n4 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n";
  CHECK(parse_error(open).line() > 0);
  CHECK(parse_error("OFF\n4 4 0\n0 0 zero\n").line() == 3);
}
