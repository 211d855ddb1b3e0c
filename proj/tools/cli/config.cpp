#include "config.hpp"

#include "casimir/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace casimir::cli {

namespace {

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

// Strict view of a JSON object: every key must be consumed before finish().
class ObjectReader {
public:
  ObjectReader(const Json& json, std::string path) : json_(json), path_(std::move(path)) {
    if (!json_.is_object()) fail(path_ + " must be an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json* find(const std::string& key) {
    used_.insert(key);
    const auto it = json_.find(key);
    return it == json_.end() || it->is_null() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* j = find(key);
    if (!j) fail("missing key '" + at(key) + "'");
    return *j;
  }

  void finish() const {
    for (const auto& item : json_.items()) {
      if (!used_.count(item.key())) fail("unknown key '" + at(item.key()) + "'");
    }
  }

private:
  const Json& json_;
  std::string path_;
  std::set<std::string> used_;
};

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path + " must be finite");
  return v;
}

double positive(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (v <= 0.0) fail(path + " must be positive");
  return v;
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path + " must be an integer");
  return j.get<std::int64_t>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path + " must be true or false");
  return j.get<bool>();
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path + " must be a string");
  return j.get<std::string>();
}

geometry::Vec3 vec3(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path + " must be an array of three numbers");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
}

geometry::Vec3 positive_vec3(const Json& j, const std::string& path) {
  const auto v = vec3(j, path);
  if ((v.array() <= 0.0).any()) fail(path + " entries must be positive");
  return v;
}

geometry::Vec3 direction(const Json& j, const std::string& path) {
  const auto v = vec3(j, path);
  if (!(v.norm() > 0.0)) fail(path + " must be nonzero");
  return v.normalized();
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json to_json(const geometry::Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

BodyKind parse_kind(const std::string& name, const std::string& path) {
  if (name == "sphere") return BodyKind::sphere;
  if (name == "ellipsoid") return BodyKind::ellipsoid;
  if (name == "torus") return BodyKind::torus;
  if (name == "box") return BodyKind::box;
  if (name == "mesh") return BodyKind::mesh;
  fail(path + ": unknown body kind '" + name + "' (sphere, ellipsoid, torus, box, mesh)");
}

BodySpec parse_body(const Json& j, const std::string& path, const std::filesystem::path& base_dir) {
  ObjectReader r(j, path);
  BodySpec b;
  b.kind = parse_kind(string(r.require("kind"), r.at("kind")), r.at("kind"));
  switch (b.kind) {
    case BodyKind::sphere: b.radius = positive(r.require("radius"), r.at("radius")); break;
    case BodyKind::ellipsoid: b.semi_axes = positive_vec3(r.require("semi_axes"), r.at("semi_axes")); break;
    case BodyKind::torus:
      b.major = positive(r.require("major"), r.at("major"));
      b.minor = positive(r.require("minor"), r.at("minor"));
      if (b.minor >= b.major) fail(path + ": torus needs minor < major");
      break;
    case BodyKind::box: b.size = positive_vec3(r.require("size"), r.at("size")); break;
    case BodyKind::mesh: {
      b.path = string(r.require("path"), r.at("path"));
      if (b.path.is_relative()) b.path = std::filesystem::absolute(base_dir / b.path);
      break;
    }
  }
  if (const Json* c = r.find("center")) b.center = vec3(*c, r.at("center"));
  if (const Json* rot = r.find("rotation")) {
    ObjectReader rr(*rot, r.at("rotation"));
    if (const Json* a = rr.find("axis")) b.axis = direction(*a, rr.at("axis"));
    if (const Json* a = rr.find("angle_deg")) b.angle_deg = number(*a, rr.at("angle_deg"));
    rr.finish();
  }
  if (const Json* t = r.find("shape_tag")) b.shape_tag = string(*t, r.at("shape_tag"));
  r.finish();
  return b;
}

solvers::Method parse_method_at(const Json& j, const std::string& path) {
  try {
    return solvers::parse_method(string(j, path));
  } catch (const ConfigError& e) {
    fail(path + ": " + e.what());
  }
}

void parse_solver(const Json& j, RunConfig& cfg) {
  ObjectReader r(j, "solver");
  auto& s = cfg.energy.solver;
  if (const Json* m = r.find("method")) {
    const auto name = string(*m, r.at("method"));
    if (name == "auto") s.method.reset();
    else s.method = parse_method_at(*m, r.at("method"));
  }
  if (const Json* v = r.find("recycle")) s.recycle = boolean(*v, r.at("recycle"));
  if (const Json* v = r.find("m")) s.m = integer(*v, r.at("m"));
  if (const Json* v = r.find("s_exp")) s.s_exp = static_cast<int>(integer(*v, r.at("s_exp")));
  if (const Json* v = r.find("rho")) s.rho = positive(*v, r.at("rho"));
  if (const Json* v = r.find("seed")) {
    if (!v->is_number_unsigned()) fail(r.at("seed") + " must be a non-negative integer");
    s.seed = v->get<std::uint64_t>();
  }
  if (const Json* v = r.find("dense_limit")) s.dense_limit = integer(*v, r.at("dense_limit"));
  r.finish();
}

void parse_quadrature(const Json& j, RunConfig& cfg) {
  ObjectReader r(j, "quadrature");
  auto& e = cfg.energy;
  if (const Json* v = r.find("n_q")) e.n_q = integer(*v, r.at("n_q"));
  if (const Json* v = r.find("eps")) e.eps = positive(*v, r.at("eps"));
  if (const Json* v = r.find("kappa")) e.kappa = positive(*v, r.at("kappa"));
  if (const Json* v = r.find("pilot_ks")) e.pilot_ks = numbers(*v, r.at("pilot_ks"));
  r.finish();
}

void parse_assembly(const Json& j, RunConfig& cfg) {
  ObjectReader r(j, "assembly");
  auto& a = cfg.energy.assembly;
  if (const Json* v = r.find("regular_degree")) a.regular_degree = static_cast<int>(integer(*v, r.at("regular_degree")));
  if (const Json* v = r.find("singular_order")) a.singular_order = static_cast<int>(integer(*v, r.at("singular_order")));
  r.finish();
}

SweepSpec parse_sweep(const Json& j, std::size_t num_bodies) {
  ObjectReader r(j, "sweep");
  SweepSpec s;
  const auto name = string(r.require("parameter"), r.at("parameter"));
  if (name == "gap") s.parameter = SweepParameter::gap;
  else if (name == "offset") s.parameter = SweepParameter::offset;
  else if (name == "rotation") s.parameter = SweepParameter::rotation;
  else fail("sweep.parameter: unknown parameter '" + name + "' (gap, offset, rotation)");
  if (const Json* v = r.find("body")) {
    const auto b = integer(*v, r.at("body"));
    if (b < 0 || static_cast<std::size_t>(b) >= num_bodies) fail("sweep.body is out of range");
    s.body = static_cast<std::size_t>(b);
  } else {
    s.body = num_bodies - 1;
  }
  if (s.parameter == SweepParameter::gap && s.body == 0) fail("sweep.body must not be 0 for a gap sweep");
  if (const Json* v = r.find("direction")) s.direction = direction(*v, r.at("direction"));
  if (const Json* v = r.find("axis")) s.axis = direction(*v, r.at("axis"));
  s.values = numbers(r.require("values"), r.at("values"));
  if (s.values.empty()) fail("sweep.values must not be empty");
  if (s.parameter == SweepParameter::gap) {
    for (const double v : s.values) {
      if (v <= 0.0) fail("sweep.values: gaps must be positive");
    }
  }
  r.finish();
  return s;
}

}  // namespace

std::string_view kind_name(BodyKind kind) {
  switch (kind) {
    case BodyKind::sphere: return "sphere";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::torus: return "torus";
    case BodyKind::box: return "box";
    case BodyKind::mesh: return "mesh";
  }
  return "?";
}

std::string_view parameter_name(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::gap: return "gap";
    case SweepParameter::offset: return "offset";
    case SweepParameter::rotation: return "rotation";
  }
  return "?";
}

RunConfig parse_config(const Json& json, const std::filesystem::path& base_dir) {
  ObjectReader r(json, "");
  RunConfig cfg;
  cfg.base_dir = base_dir;
  if (const Json* v = r.find("id")) cfg.id = string(*v, "id");
  const Json& bodies = r.require("bodies");
  if (!bodies.is_array() || bodies.empty()) fail("bodies must be a non-empty array");
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    cfg.bodies.push_back(parse_body(bodies[i], "bodies[" + std::to_string(i) + "]", base_dir));
  }
  cfg.mesh_sizes = numbers(r.require("mesh_sizes"), "mesh_sizes");
  if (cfg.mesh_sizes.empty()) fail("mesh_sizes must not be empty");
  for (std::size_t i = 0; i < cfg.mesh_sizes.size(); ++i) {
    if (cfg.mesh_sizes[i] <= 0.0) fail("mesh_sizes must be positive");
    if (i > 0 && !(cfg.mesh_sizes[i] < cfg.mesh_sizes[i - 1])) fail("mesh_sizes must be strictly decreasing");
  }
  if (const Json* v = r.find("solver")) parse_solver(*v, cfg);
  if (const Json* v = r.find("quadrature")) parse_quadrature(*v, cfg);
  if (const Json* v = r.find("assembly")) parse_assembly(*v, cfg);
  if (const Json* v = r.find("sweep")) cfg.sweep = parse_sweep(*v, cfg.bodies.size());
  if (const Json* v = r.find("compare")) {
    if (!v->is_array()) fail("compare must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "compare[" + std::to_string(i) + "]";
      ObjectReader cr((*v)[i], path);
      Variant var;
      var.method = parse_method_at(cr.require("method"), cr.at("method"));
      if (var.method == solvers::Method::dense) fail(path + ": dense is always the reference");
      if (const Json* rec = cr.find("recycle")) var.recycle = boolean(*rec, cr.at("recycle"));
      cr.finish();
      cfg.compare.push_back(var);
    }
  }
  if (const Json* v = r.find("output")) cfg.output = string(*v, "output");
  r.finish();
  energy::validate(cfg.energy);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json json;
  try {
    json = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(json, path.parent_path());
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["id"] = cfg.id;
  j["bodies"] = Json::array();
  for (const auto& b : cfg.bodies) {
    Json jb;
    jb["kind"] = kind_name(b.kind);
    switch (b.kind) {
      case BodyKind::sphere: jb["radius"] = b.radius; break;
      case BodyKind::ellipsoid: jb["semi_axes"] = to_json(b.semi_axes); break;
      case BodyKind::torus: jb["major"] = b.major; jb["minor"] = b.minor; break;
      case BodyKind::box: jb["size"] = to_json(b.size); break;
      case BodyKind::mesh: jb["path"] = b.path.string(); break;
    }
    jb["center"] = to_json(b.center);
    jb["rotation"] = {{"axis", to_json(b.axis)}, {"angle_deg", b.angle_deg}};
    if (!b.shape_tag.empty()) jb["shape_tag"] = b.shape_tag;
    j["bodies"].push_back(jb);
  }
  j["mesh_sizes"] = cfg.mesh_sizes;
  const auto& s = cfg.energy.solver;
  j["solver"] = {{"method", s.method ? std::string(solvers::method_name(*s.method)) : std::string("auto")},
                 {"recycle", s.recycle},
                 {"m", s.m},
                 {"s_exp", s.s_exp ? Json(*s.s_exp) : Json(nullptr)},
                 {"rho", s.rho},
                 {"seed", s.seed},
                 {"dense_limit", s.dense_limit}};
  const auto& e = cfg.energy;
  j["quadrature"] = {{"n_q", e.n_q},
                     {"eps", e.eps},
                     {"kappa", e.kappa ? Json(*e.kappa) : Json(nullptr)},
                     {"pilot_ks", e.pilot_ks}};
  j["assembly"] = {{"regular_degree", e.assembly.regular_degree},
                   {"singular_order", e.assembly.singular_order}};
  if (cfg.sweep) {
    const auto& w = *cfg.sweep;
    j["sweep"] = {{"parameter", parameter_name(w.parameter)},
                  {"body", w.body},
                  {"direction", to_json(w.direction)},
                  {"axis", to_json(w.axis)},
                  {"values", w.values}};
  }
  if (!cfg.compare.empty()) {
    j["compare"] = Json::array();
    for (const auto& v : cfg.compare) {
      j["compare"].push_back({{"method", solvers::method_name(v.method)}, {"recycle", v.recycle}});
    }
  }
  j["output"] = cfg.output.string();
  return j;
}

}  // namespace casimir::cli
