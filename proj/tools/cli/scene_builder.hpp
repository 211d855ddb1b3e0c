#pragma once

#include "config.hpp"

#include "casimir/geometry/scene.hpp"

#include <memory>
#include <optional>

namespace casimir::cli {

/// Mesh of one body in its own frame at mesh size h.
geometry::SurfaceMesh make_body_mesh(const BodySpec& body, double h);

/// Support function max_{x in body} x . u of the body in its own frame
/// (analytic for generated shapes, vertex maximum for mesh files).
double support(const BodySpec& body, const geometry::Vec3& u);

/// Bodies meshed at h and placed, with the sweep applied when a value is given.
/// Bodies with equal shape parameters share one mesh and shape tag.
std::shared_ptr<const geometry::Scene> build_scene(const RunConfig& config, double h,
                                                   std::optional<double> sweep_value = std::nullopt);

}  // namespace casimir::cli
