#pragma once

#include "casimir/geometry/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace casimir::geometry {

// ASCII OFF restricted to triangles: "OFF", "nv nf 0", nv vertex lines,
// nf lines "3 i j k" (0-based). '#' starts a comment. Errors carry line numbers.

SurfaceMesh read_off(std::istream& in, const std::string& source_name = "<stream>");
void write_off(const SurfaceMesh& mesh, std::ostream& out);

SurfaceMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);

}  // namespace casimir::geometry
