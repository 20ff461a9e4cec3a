// Serial reference kernels against their OpenMP counterparts on graded
// meshes of increasing size. The integrand is a sub-exponential quantile
// density, which costs an incomplete-gamma inversion per point.

#include <benchmark/benchmark.h>

#include <vector>

#include "isosym/grid.hpp"
#include "isosym/kernels.hpp"
#include "isosym/measures.hpp"

namespace {

using namespace isosym;

const ModelMeasure1D& measure() {
  static const auto m = make_subexp(0.5);
  return m;
}

RealFn integrand() {
  return [](double t) { return exact_profile(measure(), t); };
}

std::vector<double> points(benchmark::State& state) {
  const auto& g = grid_of_size(static_cast<std::size_t>(state.range(0)));
  return {g.nodes().begin(), g.nodes().end()};
}

void evaluate_serial(benchmark::State& state) {
  const auto xs = points(state);
  const auto f = integrand();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::evaluate(f, xs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void evaluate_omp(benchmark::State& state) {
  const auto xs = points(state);
  const auto f = integrand();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::evaluate(f, xs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void cells_serial(benchmark::State& state) {
  const auto xs = points(state);
  const auto f = integrand();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::cell_integrals(f, xs, 1, xs.size() - 2));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size() - 3));
}

void cells_omp(benchmark::State& state) {
  const auto xs = points(state);
  const auto f = integrand();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::cell_integrals(f, xs, 1, xs.size() - 2));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size() - 3));
}

}  // namespace

BENCHMARK(evaluate_serial)->RangeMultiplier(4)->Range(1024, 65536)->Unit(benchmark::kMicrosecond);
BENCHMARK(evaluate_omp)->RangeMultiplier(4)->Range(1024, 65536)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(cells_serial)->RangeMultiplier(4)->Range(1024, 65536)->Unit(benchmark::kMicrosecond);
BENCHMARK(cells_omp)->RangeMultiplier(4)->Range(1024, 65536)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
