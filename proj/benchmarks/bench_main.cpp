#include <benchmark/benchmark.h>

#include <array>

#include "bnqn/basins.hpp"
#include "bnqn/linalg.hpp"
#include "bnqn/objective.hpp"
#include "bnqn/random.hpp"
#include "bnqn/solvers.hpp"

namespace {

using namespace bnqn;

SymmetricMatrix random_symmetric(std::size_t m, std::uint64_t seed) {
  SeededRandomSource rng(seed);
  SymmetricMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return a;
}

void BM_Eigh(benchmark::State& state) {
  const SymmetricMatrix a = random_symmetric(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
}
BENCHMARK(BM_Eigh)->Arg(2)->Arg(5);

void BM_SolveCubic(benchmark::State& state) {
  const PolyModulusObjective f(Polynomial{-1.0, 0.0, 0.0, 1.0});
  const std::array<double, 2> z0{0.3, -1.7};
  const Method m = static_cast<Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(f, z0, m, SolverConfig{}));
  state.SetLabel(std::string(method_name(m)));
}
BENCHMARK(BM_SolveCubic)
    ->Arg(static_cast<int>(Method::BNQNNewVariant))
    ->Arg(static_cast<int>(Method::BacktrackingGD))
    ->Arg(static_cast<int>(Method::Newton1D));

void BM_BasinCubic(benchmark::State& state) {
  const Polynomial g({-1.0, 0.0, 0.0, 1.0});
  GridSpec grid;
  grid.nx = grid.ny = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(render_basin(g, grid, Method::BNQNNewVariant, SolverConfig{}));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_BasinCubic)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
