#include <benchmark/benchmark.h>

#include <random>

#include "weylwalk/canonical.hpp"
#include "weylwalk/evolve.hpp"
#include "weylwalk/io.hpp"
#include "weylwalk/zoo.hpp"

using namespace weylwalk;

namespace {

void BM_MomentumSymbol(benchmark::State& state) {
  const auto spec = state.range(0) == 0 ? zoo::bb_weyl_3d() : zoo::spin1_3d();
  RealVector p(3);
  p << 0.3, -0.2, 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(momentum_symbol(spec, p));
    p(0) += 1e-9;
  }
}
BENCHMARK(BM_MomentumSymbol)->Arg(0)->Arg(1);

void BM_OneStepNorm(benchmark::State& state) {
  const auto spec = zoo::bb_weyl_3d({0.05, 0.05});
  const auto bm = continuum_limit(spec);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(one_step_norm(spec, bm, 1.0, grid, ExecPolicy{1}).value);
  state.SetItemsProcessed(state.iterations() * grid * grid * grid);
}
BENCHMARK(BM_OneStepNorm)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
  const auto bm = continuum_limit(zoo::bb_weyl_3d());
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(pauli_decompose(bm)).gamma);
}
BENCHMARK(BM_Canonicalize);

void BM_ParseWalk(benchmark::State& state) {
  const std::string text = io::serialize_walk(zoo::spin1_3d());
  for (auto _ : state) benchmark::DoNotOptimize(io::parse_walk(text).coins().size());
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseWalk);

}  // namespace

BENCHMARK_MAIN();
