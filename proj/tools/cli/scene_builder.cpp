#include "scene_builder.hpp"

#include "casimir/errors.hpp"
#include "casimir/geometry/generators.hpp"
#include "casimir/geometry/off_io.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace casimir::cli {

namespace {

Eigen::Matrix3d base_rotation(const BodySpec& b) {
  return geometry::axis_rotation(b.axis, b.angle_deg * std::numbers::pi / 180.0);
}

std::string derived_tag(const BodySpec& b) {
  RunConfig single;
  single.bodies = {b};
  Json j = to_json(single)["bodies"][0];
  j.erase("center");
  j.erase("rotation");
  return j.dump();
}

}  // namespace

geometry::SurfaceMesh make_body_mesh(const BodySpec& b, double h) {
  switch (b.kind) {
    case BodyKind::sphere: return geometry::make_sphere(b.radius, h);
    case BodyKind::ellipsoid: return geometry::make_ellipsoid(b.semi_axes, h);
    case BodyKind::torus: return geometry::make_torus(b.major, b.minor, h);
    case BodyKind::box: return geometry::make_box(b.size, h);
    case BodyKind::mesh: return geometry::load_mesh(b.path);
  }
  throw ConfigError("unknown body kind");
}

double support(const BodySpec& b, const geometry::Vec3& u) {
  switch (b.kind) {
    case BodyKind::sphere: return b.radius * u.norm();
    case BodyKind::ellipsoid: return b.semi_axes.cwiseProduct(u).norm();
    case BodyKind::torus: return b.major * u.head<2>().norm() + b.minor * u.norm();
    case BodyKind::box: return 0.5 * b.size.cwiseProduct(u.cwiseAbs()).sum();
    case BodyKind::mesh: {
      const auto mesh = geometry::load_mesh(b.path);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& v : mesh.vertices()) best = std::max(best, v.dot(u));
      return best;
    }
  }
  throw ConfigError("unknown body kind");
}

std::shared_ptr<const geometry::Scene> build_scene(const RunConfig& config, double h,
                                                   std::optional<double> sweep_value) {
  std::vector<geometry::RigidMotion> motions;
  for (const auto& b : config.bodies) motions.push_back({base_rotation(b), b.center});

  if (sweep_value) {
    if (!config.sweep) throw ConfigError("sweep value given without a sweep");
    const auto& s = *config.sweep;
    auto& m = motions.at(s.body);
    const double v = *sweep_value;
    switch (s.parameter) {
      case SweepParameter::gap: {
        const auto& m0 = motions[0];
        const double ext0 = support(config.bodies[0], m0.rotation.transpose() * s.direction);
        const double extb = support(config.bodies[s.body], m.rotation.transpose() * (-s.direction));
        m.translation = m0.translation + (ext0 + extb + v) * s.direction;
        break;
      }
      case SweepParameter::offset: m.translation += v * s.direction; break;
      case SweepParameter::rotation:
        m.rotation = geometry::axis_rotation(s.axis, v * std::numbers::pi / 180.0) * m.rotation;
        break;
    }
  }

  std::map<std::string, std::shared_ptr<const geometry::SurfaceMesh>> meshes;
  std::vector<geometry::Body> bodies;
  for (std::size_t i = 0; i < config.bodies.size(); ++i) {
    const auto& spec = config.bodies[i];
    const std::string key = derived_tag(spec);
    auto& mesh = meshes[key];
    if (!mesh) mesh = std::make_shared<const geometry::SurfaceMesh>(make_body_mesh(spec, h));
    bodies.push_back({mesh, motions[i], spec.shape_tag.empty() ? key : spec.shape_tag});
  }
  return std::make_shared<const geometry::Scene>(std::move(bodies));
}

}  // namespace casimir::cli
