#include "runner.hpp"

#include "csv.hpp"
#include "scene_builder.hpp"

#include "casimir/bem/assembly.hpp"
#include "casimir/bem/p1_space.hpp"
#include "casimir/energy/richardson.hpp"
#include "casimir/errors.hpp"
#include "casimir/solvers/dense.hpp"
#include "casimir/solvers/sweep.hpp"

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <thread>

namespace casimir::cli {

namespace {

using Row = std::vector<std::string>;

const std::vector<std::string> kIntegrandColumns{"config_id", "h",      "node_index", "k",       "y",
                                                 "xi",        "solver", "matvecs",    "retained"};
const std::vector<std::string> kEnergyColumns{"config_id", "param_name", "param_value", "h",           "energy_normalized",
                                              "integral",  "kappa",      "N_q",         "extrapolated"};
const std::vector<std::string> kSolverColumns{"config_id",        "h",        "node_index",       "k",
                                              "method",           "recycled", "rel_err_vs_dense", "matvecs_measured",
                                              "matvecs_budget",   "subspace_dim"};

struct Point {
  std::string id;
  std::optional<double> value;
};

struct PointRows {
  std::vector<Row> integrand, energy, solver;
  std::vector<std::string> summary;
};

std::vector<Point> make_points(const RunConfig& cfg) {
  if (!cfg.sweep) return {{cfg.id, std::nullopt}};
  std::vector<Point> out;
  for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
    out.push_back({cfg.id + ":" + std::to_string(i), cfg.sweep->values[i]});
  }
  return out;
}

std::string label(solvers::Method method, bool recycled) {
  return std::string(solvers::method_name(method)) + (recycled ? "_recycled" : "");
}

std::string param_name(const RunConfig& cfg) {
  return cfg.sweep ? std::string(parameter_name(cfg.sweep->parameter)) : std::string();
}

std::string param_value(const Point& p) { return p.value ? num(*p.value) : std::string(); }

std::uint64_t report_budget(const solvers::SolverReport& r, Eigen::Index m) {
  if (r.method == solvers::Method::dense) return 0;
  return solvers::node_matvec_budget(r.method, r.recycled, m, r.recycled_count);
}

Row energy_row(const RunConfig& cfg, const Point& p, const energy::CasimirResult& r) {
  return {p.id, param_name(cfg), param_value(p), num(r.h), num(r.energy_normalized), num(r.integral),
          num(r.plan.kappa), std::to_string(r.plan.size()), "0"};
}

Row extrapolated_row(const RunConfig& cfg, const Point& p, double energy, double integral) {
  return {p.id, param_name(cfg), param_value(p), "0", num(energy), num(integral), "", "", "1"};
}

// Runs f(i) for i in [0, n) on `workers` threads; the OpenMP threads are
// split between them. Rethrows the failure of the lowest index.
template <class F>
void for_each_point(std::size_t n, int workers, F&& f) {
  const int total_threads = omp_get_max_threads();
  const auto pool = static_cast<std::size_t>(std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(n, 1))));
  const int inner = std::max(1, total_threads / static_cast<int>(pool));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    omp_set_num_threads(inner);
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (pool == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::filesystem::path prepare_output(const RunConfig& cfg, const RunOptions& options) {
  const auto dir = options.out.empty() ? cfg.output : options.out;
  std::filesystem::create_directories(dir);
  RunConfig effective = cfg;
  effective.output = dir;
  std::ofstream(dir / "effective_config.json") << to_json(effective).dump(2) << '\n';
  return dir;
}

void write_outputs(const std::filesystem::path& dir, std::string_view command, const std::vector<PointRows>& rows) {
  const std::string comment = fmt::format("casimir {} {}", command, timestamp());
  CsvWriter integrand(dir / "integrand.csv", comment, kIntegrandColumns);
  CsvWriter energy(dir / "energy.csv", comment, kEnergyColumns);
  CsvWriter solver(dir / "solver.csv", comment, kSolverColumns);
  for (const auto& p : rows) {
    for (const auto& r : p.integrand) integrand.row(r);
    for (const auto& r : p.energy) energy.row(r);
    for (const auto& r : p.solver) solver.row(r);
  }
}

void print_summary(const std::vector<PointRows>& rows) {
  for (const auto& p : rows) {
    for (const auto& line : p.summary) fmt::print("{}\n", line);
  }
}

PointRows run_point(const RunConfig& cfg, const Point& p) {
  PointRows rows;
  const auto result = energy::compute_extrapolated(
      [&](double h) { return build_scene(cfg, h, p.value); }, cfg.mesh_sizes, cfg.energy);
  for (const auto& level : result.levels) {
    for (Eigen::Index j = 0; j < level.plan.size(); ++j) {
      const auto& r = level.reports[static_cast<std::size_t>(j)];
      const std::string h = num(level.h), idx = std::to_string(j), k = num(level.plan.k[j]);
      rows.integrand.push_back({p.id, h, idx, k, num(level.plan.y[j]), num(r.xi), label(r.method, r.recycled),
                                std::to_string(r.matvecs), std::to_string(r.retained.size())});
      rows.solver.push_back({p.id, h, idx, k, std::string(solvers::method_name(r.method)), r.recycled ? "1" : "0", "",
                             std::to_string(r.matvecs), std::to_string(report_budget(r, cfg.energy.solver.m)),
                             std::to_string(r.subspace_dim)});
    }
    rows.energy.push_back(energy_row(cfg, p, level));
    rows.summary.push_back(fmt::format("{} {}h = {}  n = {}  kappa = {:.4f}  energy = {:.6e}", p.id,
                                       p.value ? fmt::format("{} = {}  ", param_name(cfg), *p.value) : "",
                                       level.h, level.dim, level.plan.kappa, level.energy_normalized));
  }
  if (result.extrapolated) {
    rows.energy.push_back(extrapolated_row(cfg, p, result.energy_normalized, result.integral));
    rows.summary.push_back(fmt::format("{} extrapolated energy = {:.6e}", p.id, result.energy_normalized));
  }
  return rows;
}

std::vector<Variant> compare_variants(const RunConfig& cfg) {
  if (!cfg.compare.empty()) return cfg.compare;
  return {{solvers::Method::inverse_free, false},
          {solvers::Method::inverse_free, true},
          {solvers::Method::arnoldi, false},
          {solvers::Method::arnoldi, true}};
}

PointRows compare_point(const RunConfig& cfg, const Point& p) {
  PointRows rows;
  const auto variants = compare_variants(cfg);
  const auto& sc = cfg.energy.solver;
  std::vector<energy::CasimirResult> dense_levels;
  for (const double h : cfg.mesh_sizes) {
    const auto scene = build_scene(cfg, h, p.value);
    const bem::P1Space space(scene);
    if (space.dim() > sc.dense_limit) {
      throw ConfigError(fmt::format("dense reference infeasible at h = {} (n = {} > dense_limit = {}); use a "
                                    "coarser mesh (larger h)",
                                    h, space.dim(), sc.dense_limit));
    }
    energy::CasimirResult dense;
    dense.h = h;
    dense.gap = scene->min_distance();
    dense.dim = space.dim();
    const int s_exp = sc.s_exp.value_or(solvers::default_s_exp(dense.gap));
    auto choice = energy::choose_plan(space, cfg.energy, solvers::Method::dense, s_exp);
    dense.plan = choice.plan;
    dense.fit = choice.fit;

    std::vector<solvers::KrylovSweep> sweeps;
    for (const auto& v : variants) {
      solvers::KrylovOptions o;
      o.method = v.method;
      o.recycle = v.recycle;
      o.m = sc.m;
      o.s_exp = s_exp;
      o.rho = sc.rho;
      o.seed = sc.seed;
      sweeps.emplace_back(o);
    }
    std::vector<std::uint64_t> totals(variants.size(), 0);
    auto counter = std::make_shared<bem::MatvecCounter>();
    const std::string hs = num(h);
    for (Eigen::Index j = 0; j < dense.plan.size(); ++j) {
      const double k = dense.plan.k[j];
      const solvers::Pencil pencil(bem::assemble(space, k, cfg.energy.assembly), counter);
      const auto ref = solvers::logdet_dense(pencil, k);
      const std::string idx = std::to_string(j), ks = num(k), ys = num(dense.plan.y[j]);
      rows.integrand.push_back({p.id, hs, idx, ks, ys, num(ref.xi), "dense", "0", "0"});
      rows.solver.push_back({p.id, hs, idx, ks, "dense", "0", num(0.0), "0", "0", std::to_string(space.dim())});
      for (std::size_t v = 0; v < variants.size(); ++v) {
        const auto r = sweeps[v].solve(pencil, k);
        totals[v] += r.matvecs;
        const double err = ref.xi != 0.0 ? std::abs(r.xi - ref.xi) / std::abs(ref.xi) : std::abs(r.xi);
        rows.integrand.push_back({p.id, hs, idx, ks, ys, num(r.xi), label(variants[v].method, variants[v].recycle),
                                  std::to_string(r.matvecs), std::to_string(r.retained.size())});
        rows.solver.push_back({p.id, hs, idx, ks, std::string(solvers::method_name(r.method)), r.recycled ? "1" : "0",
                               num(err), std::to_string(r.matvecs), std::to_string(report_budget(r, sc.m)),
                               std::to_string(r.subspace_dim)});
      }
      dense.reports.push_back(ref);
    }
    dense.xi.resize(dense.plan.size());
    for (Eigen::Index j = 0; j < dense.plan.size(); ++j) dense.xi[j] = dense.reports[static_cast<std::size_t>(j)].xi;
    dense.integral = dense.plan.integrate(dense.xi);
    dense.energy_normalized = -dense.integral / (2.0 * std::numbers::pi);
    rows.energy.push_back(energy_row(cfg, p, dense));

    for (std::size_t v = 0; v < variants.size(); ++v) {
      const auto& sw = sweeps[v];
      const auto budget = solvers::matvec_budget(variants[v].method, variants[v].recycle, sc.m, dense.plan.size(),
                                                 sw.recycled_counts(), sw.restarts());
      rows.solver.push_back({p.id, hs, "total", "", std::string(solvers::method_name(variants[v].method)),
                             variants[v].recycle ? "1" : "0", "", std::to_string(totals[v]), std::to_string(budget),
                             ""});
      if (budget != totals[v]) {
        spdlog::warn("{} h = {}: {} measured {} matvecs, budget {}", p.id, h, label(variants[v].method, variants[v].recycle),
                     totals[v], budget);
      }
      const auto& s = sw.recycled_counts();
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] > s[i - 1] && s[i - 1] > 0) {
          spdlog::warn("{} h = {}: recycled count rose from {} to {} at node {}", p.id, h, s[i - 1], s[i], i + 1);
          break;
        }
      }
      rows.summary.push_back(fmt::format("{} h = {}  {:<22} matvecs {} (budget {})", p.id, h,
                                         label(variants[v].method, variants[v].recycle), totals[v], budget));
    }
    rows.summary.push_back(fmt::format("{} h = {}  dense energy = {:.6e}", p.id, h, dense.energy_normalized));
    dense_levels.push_back(std::move(dense));
  }
  if (dense_levels.size() >= 2) {
    const auto& c = dense_levels[dense_levels.size() - 2];
    const auto& f = dense_levels.back();
    const double e = energy::richardson(c.energy_normalized, f.energy_normalized, c.h, f.h);
    const double i = energy::richardson(c.integral, f.integral, c.h, f.h);
    rows.energy.push_back(extrapolated_row(cfg, p, e, i));
  }
  return rows;
}

template <class F>
void drive(const RunConfig& cfg, const RunOptions& options, std::string_view command, F&& point_fn) {
  const auto dir = prepare_output(cfg, options);
  const auto points = make_points(cfg);
  std::vector<PointRows> rows(points.size());
  std::exception_ptr failure;
  try {
    for_each_point(points.size(), resolve_workers(options.workers),
                   [&](std::size_t i) { rows[i] = point_fn(cfg, points[i]); });
  } catch (...) {
    failure = std::current_exception();
  }
  write_outputs(dir, command, rows);
  if (failure) std::rethrow_exception(failure);
  print_summary(rows);
  spdlog::info("wrote {}", dir.string());
}

}  // namespace

int resolve_workers(int requested) {
  if (const char* env = std::getenv("CASIMIR_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("CASIMIR_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  if (requested < 1) throw ConfigError("worker count must be positive");
  return requested;
}

void run(const RunConfig& config, const RunOptions& options) {
  if (config.bodies.size() < 2) throw ConfigError("the Casimir energy needs at least two bodies");
  drive(config, options, "run", run_point);
}

void compare(const RunConfig& config, const RunOptions& options) {
  if (config.bodies.size() < 2) throw ConfigError("the Casimir energy needs at least two bodies");
  drive(config, options, "compare", compare_point);
}

}  // namespace casimir::cli
