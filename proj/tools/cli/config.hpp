#pragma once

#include "casimir/energy/compute.hpp"
#include "casimir/geometry/mesh.hpp"
#include "casimir/solvers/eigen_pairs.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace casimir::cli {

using Json = nlohmann::ordered_json;

enum class BodyKind { sphere, ellipsoid, torus, box, mesh };

struct BodySpec {
  BodyKind kind = BodyKind::sphere;
  double radius = 1.0;                 // sphere
  geometry::Vec3 semi_axes{1, 1, 1};   // ellipsoid
  double major = 2.0, minor = 0.5;     // torus
  geometry::Vec3 size{1, 1, 1};        // box edge lengths
  std::filesystem::path path;          // mesh file
  geometry::Vec3 center = geometry::Vec3::Zero();
  geometry::Vec3 axis{0, 0, 1};        // rotation axis
  double angle_deg = 0.0;              // rotation angle
  std::string shape_tag;               // empty: derived from the shape parameters
};

enum class SweepParameter { gap, offset, rotation };

/// Moves one body per sweep value. gap: places the body along `direction` so
/// that its support extent is `value` beyond that of body 0; offset: shifts it
/// by value * direction; rotation: turns it by value degrees about `axis`
/// through its centre, after its own rotation.
struct SweepSpec {
  SweepParameter parameter = SweepParameter::gap;
  std::size_t body = 1;
  geometry::Vec3 direction{1, 0, 0};
  geometry::Vec3 axis{0, 0, 1};
  std::vector<double> values;
};

struct Variant {
  solvers::Method method = solvers::Method::inverse_free;
  bool recycle = false;
};

struct RunConfig {
  std::string id = "run";
  std::vector<BodySpec> bodies;
  std::vector<double> mesh_sizes;
  energy::EnergyConfig energy;
  std::optional<SweepSpec> sweep;
  std::vector<Variant> compare;  // Krylov variants checked against dense
  std::filesystem::path output = "out";
  std::filesystem::path base_dir;  // relative mesh paths resolve here; not serialized
};

/// Parses and validates; unknown or mistyped keys raise ConfigError naming
/// the offending path.
RunConfig parse_config(const Json& json, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// The configuration with every default filled in.
Json to_json(const RunConfig& config);

std::string_view kind_name(BodyKind kind);
std::string_view parameter_name(SweepParameter parameter);

}  // namespace casimir::cli
