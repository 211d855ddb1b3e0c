#include "cli/config.hpp"
#include "cli/scene_builder.hpp"

#include "casimir/errors.hpp"
#include "casimir/geometry/off_io.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace casimir;
using namespace casimir::cli;
namespace fs = std::filesystem;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(Json::parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected a ConfigError for " << text);
  return {};
}

const char* kTwoSpheres = R"({
  "id": "tiny",
  "bodies": [{"kind": "sphere", "radius": 1.0},
             {"kind": "sphere", "radius": 1.0, "center": [2.8, 0, 0]}],
  "mesh_sizes": [0.5],
  "solver": {"method": "dense"},
  "quadrature": {"n_q": 3, "kappa": 1.0}
})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("casimir_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(CASIMIR_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string body_of(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line, out;
  while (std::getline(in, line))
    if (!line.starts_with("#")) out += line + "\n";
  return out;
}

std::string first_data_line(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.starts_with("#")) return line;
  return {};
}

}  // namespace

TEST_CASE("config defaults and parsing", "[cli]") {
  const RunConfig cfg = parse_config(Json::parse(kTwoSpheres));
  CHECK(cfg.id == "tiny");
  REQUIRE(cfg.bodies.size() == 2);
  CHECK(cfg.bodies[1].center.x() == 2.8);
  CHECK(cfg.energy.n_q == 3);
  CHECK(cfg.energy.kappa == 1.0);
  CHECK(cfg.energy.solver.method == solvers::Method::dense);
  CHECK(cfg.energy.eps == 1e-6);
  CHECK_FALSE(cfg.sweep.has_value());
}

TEST_CASE("config errors name the offending key", "[cli]") {
  CHECK_THAT(config_error(R"({"mesh_sizes": [0.2]})"), Catch::Matchers::ContainsSubstring("bodies"));
  CHECK_THAT(config_error(R"({"bodies": [{"kind": "sphere", "radius": 1}], "mesh_sizes": [0.2], "colour": 1})"),
             Catch::Matchers::ContainsSubstring("colour"));
  CHECK_THAT(config_error(R"({"bodies": [{"kind": "sphere", "radius": 1}, {"kind": "sphere", "radius": "one"}],
                              "mesh_sizes": [0.2]})"),
             Catch::Matchers::ContainsSubstring("bodies[1].radius"));
  CHECK_THAT(config_error(R"({"bodies": [{"kind": "cone"}], "mesh_sizes": [0.2]})"),
             Catch::Matchers::ContainsSubstring("kind"));
  CHECK_THAT(config_error(R"({"bodies": [{"kind": "sphere", "radius": 1}], "mesh_sizes": [0.1, 0.2]})"),
             Catch::Matchers::ContainsSubstring("mesh_sizes"));
  CHECK_THAT(config_error(R"({"bodies": [], "mesh_sizes": [0.2]})"), Catch::Matchers::ContainsSubstring("bodies"));
  CHECK_THAT(config_error(R"({"bodies": [{"kind": "sphere", "radius": 1}], "mesh_sizes": [0.2],
                              "solver": {"method": "lanczos"}})"),
             Catch::Matchers::ContainsSubstring("method"));
}

TEST_CASE("effective config round trips", "[cli]") {
  const RunConfig cfg = parse_config(Json::parse(kTwoSpheres));
  const Json once = to_json(cfg);
  const Json twice = to_json(parse_config(once));
  CHECK(once == twice);
  CHECK(once.contains("solver"));
  CHECK(once["quadrature"]["n_q"] == 3);
}

TEST_CASE("gap sweep places bodies at the requested distance", "[cli]") {
  RunConfig cfg = parse_config(Json::parse(R"({
    "bodies": [{"kind": "box", "size": [1, 1, 1]}, {"kind": "box", "size": [1, 1, 1]}],
    "mesh_sizes": [0.25],
    "sweep": {"parameter": "gap", "values": [0.5, 1.0]}
  })"));
  for (double z : cfg.sweep->values) {
    const auto scene = build_scene(cfg, 0.25, z);
    CHECK(std::abs(scene->min_distance() - z) <= 1e-12);
    CHECK(scene->congruent(0, 1));
  }

  cfg.bodies = {BodySpec{}, BodySpec{}};
  const auto spheres = build_scene(cfg, 0.2, 1.5);
  CHECK(std::abs(spheres->min_distance() - 1.5) <= 2.0 * 0.2 * 0.2);
}

TEST_CASE("support functions of generated shapes", "[cli]") {
  BodySpec box;
  box.kind = BodyKind::box;
  box.size = {2, 1, 1};
  CHECK(support(box, {1, 0, 0}) == 1.0);
  BodySpec torus;
  torus.kind = BodyKind::torus;
  CHECK(support(torus, {1, 0, 0}) == 2.5);
  CHECK(support(torus, {0, 0, 1}) == 0.5);
  BodySpec ellipsoid;
  ellipsoid.kind = BodyKind::ellipsoid;
  ellipsoid.semi_axes = {3, 2, 1};
  CHECK(support(ellipsoid, {0, 1, 0}) == 2.0);
}

TEST_CASE("command line exit codes", "[cli]") {
  const fs::path dir = scratch("exit");
  std::ofstream(dir / "missing.json") << R"({"mesh_sizes": [0.2]})";
  CHECK(run_tool("run " + (dir / "missing.json").string()) == 2);

  std::ofstream(dir / "overlap.json") << R"({
    "bodies": [{"kind": "sphere", "radius": 1}, {"kind": "sphere", "radius": 1, "center": [1, 0, 0]}],
    "mesh_sizes": [0.5]})";
  CHECK(run_tool("run " + (dir / "overlap.json").string() + " --out " + (dir / "o").string()) == 3);

  CHECK(run_tool("run " + (dir / "absent.json").string()) == 2);
  CHECK(run_tool("frobnicate") == 2);

  CHECK(run_tool("mesh box --size 1 1 1 --mesh-size 0.5 -o " + (dir / "box.off").string()) == 0);
  CHECK(geometry::load_mesh(dir / "box.off").num_triangles() == 48);
  fs::remove_all(dir);
}

TEST_CASE("run writes deterministic CSV reports", "[cli]") {
  const fs::path dir = scratch("run");
  std::ofstream(dir / "tiny.json") << kTwoSpheres;
  REQUIRE(run_tool("run " + (dir / "tiny.json").string() + " --out " + (dir / "a").string()) == 0);
  REQUIRE(run_tool("run " + (dir / "tiny.json").string() + " --out " + (dir / "b").string()) == 0);

  CHECK(first_data_line(dir / "a" / "integrand.csv") == "config_id,h,node_index,k,y,xi,solver,matvecs,retained");
  CHECK(first_data_line(dir / "a" / "energy.csv") ==
        "config_id,param_name,param_value,h,energy_normalized,integral,kappa,N_q,extrapolated");
  CHECK(first_data_line(dir / "a" / "solver.csv") ==
        "config_id,h,node_index,k,method,recycled,rel_err_vs_dense,matvecs_measured,matvecs_budget,subspace_dim");
  for (const char* name : {"integrand.csv", "energy.csv", "solver.csv"}) {
    INFO(name);
    CHECK(body_of(dir / "a" / name) == body_of(dir / "b" / name));
  }

  // Re-running from the echoed effective configuration reproduces the results.
  REQUIRE(fs::exists(dir / "a" / "effective_config.json"));
  REQUIRE(run_tool("run " + (dir / "a" / "effective_config.json").string() + " --out " + (dir / "c").string()) == 0);
  CHECK(body_of(dir / "a" / "energy.csv") == body_of(dir / "c" / "energy.csv"));

  std::ifstream energy(dir / "a" / "energy.csv");
  std::string line;
  int rows = 0;
  while (std::getline(energy, line)) rows += !line.starts_with("#");
  CHECK(rows == 2);  // header plus one mesh level
  fs::remove_all(dir);
}
