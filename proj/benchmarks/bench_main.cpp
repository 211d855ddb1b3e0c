#include "casimir/bem/assembly.hpp"
#include "casimir/geometry/generators.hpp"
#include "casimir/solvers/dense.hpp"
#include "casimir/solvers/krylov.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

using namespace casimir;

namespace {

std::shared_ptr<const geometry::Scene> two_spheres(double h) {
  auto mesh = std::make_shared<const geometry::SurfaceMesh>(geometry::make_sphere(1.0, h));
  geometry::RigidMotion second;
  second.translation = {2.5, 0.0, 0.0};
  return std::make_shared<const geometry::Scene>(
      std::vector<geometry::Body>{{mesh, {}, "sphere"}, {mesh, second, "sphere"}});
}

// Mesh size in hundredths, from the benchmark argument.
const solvers::Pencil& pencil_at(std::int64_t h100) {
  static std::map<std::int64_t, std::unique_ptr<solvers::Pencil>> cache;
  auto& slot = cache[h100];
  if (!slot) {
    const bem::P1Space space(two_spheres(static_cast<double>(h100) / 100.0));
    slot = std::make_unique<solvers::Pencil>(bem::assemble(space, 0.8));
    slot->factorize();
  }
  return *slot;
}

void BM_Assemble(benchmark::State& state) {
  const bem::P1Space space(two_spheres(static_cast<double>(state.range(0)) / 100.0));
  for (auto _ : state) benchmark::DoNotOptimize(bem::assemble(space, 0.8));
  state.counters["dim"] = static_cast<double>(space.dim());
}
BENCHMARK(BM_Assemble)->Arg(30)->Arg(20)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_DenseLogdet(benchmark::State& state) {
  const auto& pencil = pencil_at(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solvers::logdet_dense(pencil, 0.8));
  state.counters["dim"] = static_cast<double>(pencil.dim());
}
BENCHMARK(BM_DenseLogdet)->Arg(30)->Arg(20)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Arnoldi(benchmark::State& state) {
  const auto& pencil = pencil_at(state.range(0));
  const Eigen::VectorXd b = solvers::start_vector(pencil.dim());
  for (auto _ : state) benchmark::DoNotOptimize(solvers::arnoldi_eigs(pencil, state.range(1), b));
}
BENCHMARK(BM_Arnoldi)->Args({20, 50})->Args({20, 100})->Args({15, 100})->Unit(benchmark::kMillisecond);

void BM_InverseFree(benchmark::State& state) {
  const auto& pencil = pencil_at(state.range(0));
  const Eigen::VectorXd b = solvers::start_vector(pencil.dim());
  for (auto _ : state) benchmark::DoNotOptimize(solvers::inverse_free_eigs(pencil, state.range(1), 1.0, b));
}
BENCHMARK(BM_InverseFree)->Args({20, 50})->Args({20, 100})->Args({15, 100})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
