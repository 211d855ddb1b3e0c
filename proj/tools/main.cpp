#include "cli/config.hpp"
#include "cli/runner.hpp"
#include "cli/scene_builder.hpp"

#include "casimir/errors.hpp"
#include "casimir/geometry/off_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <exception>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitNumerical = 4;

int exit_code(const casimir::Error& e) {
  switch (e.category()) {
    case casimir::ErrorCategory::config: return kExitConfig;
    case casimir::ErrorCategory::geometry: return kExitGeometry;
    case casimir::ErrorCategory::numerical:
    case casimir::ErrorCategory::resource_limit: return kExitNumerical;
  }
  return 1;
}

void set_log_level(const std::string& name) {
  const auto level = spdlog::level::from_str(name);
  if (level == spdlog::level::off && name != "off") {
    throw casimir::ConfigError("unknown log level '" + name + "'");
  }
  spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace casimir;
  CLI::App app{"Casimir energies between rigid bodies from boundary element log-determinants"};
  app.require_subcommand(1);

  std::string config_path;
  std::string log_level = "info";
  cli::RunOptions run_options;

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON configuration")->required();
    sub->add_option("--out", run_options.out, "Output directory (overrides the config)");
    sub->add_option("--workers", run_options.workers, "Concurrent sweep points")->check(CLI::PositiveNumber);
    sub->add_option("--log", log_level, "trace, debug, info, warn, error or off");
  };
  auto* run_cmd = app.add_subcommand("run", "Compute energies for a configuration");
  add_run_options(run_cmd);
  auto* compare_cmd = app.add_subcommand("compare", "Compare Krylov solvers against the dense reference");
  add_run_options(compare_cmd);

  auto* mesh_cmd = app.add_subcommand("mesh", "Write a generated surface mesh as OFF");
  std::string kind;
  double h = 0.1;
  double radius = 1.0, major = 2.0, minor = 0.5;
  std::vector<double> semi_axes, size;
  std::string out_file;
  mesh_cmd->add_option("kind", kind, "sphere, ellipsoid, torus or box")
      ->required()
      ->check(CLI::IsMember({"sphere", "ellipsoid", "torus", "box"}));
  mesh_cmd->add_option("--mesh-size", h, "Target mesh size h")->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--radius", radius, "Sphere radius")->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--semi-axes", semi_axes, "Ellipsoid semi-axes")->expected(3);
  mesh_cmd->add_option("--major", major, "Torus major radius")->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--minor", minor, "Torus tube radius")->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--size", size, "Box edge lengths")->expected(3);
  mesh_cmd->add_option("-o,--output", out_file, "OFF file to write")->required();
  mesh_cmd->add_option("--log", log_level, "Log level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    set_log_level(log_level);
    if (*mesh_cmd) {
      cli::BodySpec body;
      body.kind = kind == "sphere" ? cli::BodyKind::sphere
                  : kind == "ellipsoid" ? cli::BodyKind::ellipsoid
                  : kind == "torus" ? cli::BodyKind::torus
                                      : cli::BodyKind::box;
      body.radius = radius;
      body.major = major;
      body.minor = minor;
      if (!semi_axes.empty()) body.semi_axes = {semi_axes[0], semi_axes[1], semi_axes[2]};
      if (!size.empty()) body.size = {size[0], size[1], size[2]};
      if (body.kind == cli::BodyKind::torus && minor >= major) throw GeometryError("torus needs minor < major");
      const auto mesh = cli::make_body_mesh(body, h);
      geometry::save_mesh(mesh, out_file);
      fmt::print("{}: {} vertices, {} triangles, max edge {:.4f}\n", out_file, mesh.num_vertices(),
                 mesh.num_triangles(), mesh.max_edge_length());
      return 0;
    }
    const auto config = cli::load_config(config_path);
    if (*run_cmd) cli::run(config, run_options);
    else cli::compare(config, run_options);
    return 0;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
