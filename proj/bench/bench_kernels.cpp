// Serial reference paths against the OpenMP kernels. The second argument of
// every benchmark selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "dpgrad/gradient.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/schur.hpp"
#include "dpgrad/small_groups.hpp"
#include "dpgrad/standard_groups.hpp"
#include "dpgrad/suites.hpp"
#include "dpgrad/witt.hpp"

using namespace dpgrad;

namespace {

void BM_BarBoundary3(benchmark::State& state) {
  const FiniteGroup g = dihedral_group(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bar_boundary3(g, state.range(1) != 0).nonzeros());
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_BarBoundary3)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SchurMultiplier(benchmark::State& state) {
  const FiniteGroup g = load_small_groups(16).back();
  SchurOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(schur_multiplier(g, opt).multiplier_order);
  state.SetLabel(opt.parallel ? "parallel" : "serial");
}
BENCHMARK(BM_SchurMultiplier)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SparseSmith(benchmark::State& state) {
  const FiniteGroup g = load_small_groups(12).back();
  const SparseIntMatrix d3 = bar_boundary3(g, false);
  SmithOptions opt;
  opt.densify_threshold = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(d3, opt).rank);
  state.SetLabel("densify at " + std::to_string(opt.densify_threshold));
}
BENCHMARK(BM_SparseSmith)->Arg(0)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_LyndonCount(benchmark::State& state) {
  const auto i = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lyndon_count(i, state.range(1) != 0));
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_LyndonCount)->ArgsProduct({{18, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ProductUniverse(benchmark::State& state) {
  const auto groups = load_small_groups(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_product_universe(groups, state.range(1) != 0).instances.size());
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_ProductUniverse)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RecursionDiagonal(benchmark::State& state) {
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_recursion_diagonal(n, state.range(1) != 0).failures);
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_RecursionDiagonal)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RecursionGrid(benchmark::State& state) {
  const auto grid = recursion_grid(500, 1000000);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_recursion_grid(grid, 4, state.range(0) != 0).failures);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_RecursionGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GradientSequence(benchmark::State& state) {
  const SequenceSpec spec = fp_instance_sequence(random_fp_instances(24, 120, 7));
  for (auto _ : state) benchmark::DoNotOptimize(run_sequence(spec, state.range(0) != 0).size());
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_GradientSequence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
