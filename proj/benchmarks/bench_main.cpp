#include <benchmark/benchmark.h>

#include <memory>

#include "cnls/families.hpp"
#include "cnls/propagator.hpp"
#include "cnls/specfun.hpp"

namespace {

using namespace cnls;

void BM_JacobiElliptic(benchmark::State& state) {
  double u = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::jacobi_elliptic(u, 0.7071067811865476));
    u = u < 10.0 ? u + 1e-3 : -10.0;
  }
}
BENCHMARK(BM_JacobiElliptic);

void BM_Erfi(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::erfi(x));
    x = x < 5.0 ? x + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_Erfi);

void BM_AssembleElliptic(benchmark::State& state) {
  const auto fam = FamilySpec::elliptic(1);
  const auto tr = make_trace(fam, 5.0);
  const SpatialGrid grid(32.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(fam, grid, 2.5, tr));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssembleElliptic)->Arg(1024)->Arg(4096);

void BM_SplitStep(benchmark::State& state) {
  const auto fam = FamilySpec::sech(6.0);
  const auto tr = std::make_shared<const ModulationTrace>(make_trace(fam, 5.0));
  const double ratio = 1024.0 / static_cast<double>(state.range(0));
  PropagationConfig cfg;
  cfg.dt = 5e-4 * ratio * ratio;  // keeps dt * k_max^2 fixed
  cfg.t_end = 5.0;
  cfg.grid = SpatialGrid(32.0, static_cast<std::size_t>(state.range(0)));
  cfg.coefficients = std::make_shared<const CoefficientSampler>(fam, tr);
  SplitStepPropagator p(cfg);
  FieldPair f = assemble(fam, cfg.grid, 0.0, *tr);
  for (auto _ : state) {
    f = p.step(std::move(f), 1.0);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SplitStep)->Arg(512)->Arg(1024)->Arg(2048);

}  // namespace
BENCHMARK_MAIN();
