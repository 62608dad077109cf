#include <benchmark/benchmark.h>

#include "ffrand/experiments.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/lb_tree.hpp"

namespace {

using namespace ffrand;

const RootedLBTree& tree() {
  static const RootedLBTree t = build_lb_tree(3, 132);
  return t;
}

void BM_OrderKernel(benchmark::State& state) {
  const Forest& f = tree().forest;
  ColoringScratch scratch;
  Coloring out;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto order = order_from_positions(sample_positions(f.size(), seed++));
    benchmark::DoNotOptimize(first_fit_color(f, order, scratch, out).max_color);
  }
  state.SetItemsProcessed(state.iterations() * f.size());
}
BENCHMARK(BM_OrderKernel)->Unit(benchmark::kMicrosecond);

void BM_PositionKernel(benchmark::State& state) {
  const Forest& f = tree().forest;
  ColoringScratch scratch;
  Coloring out;
  PositionAssignment pos;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    resample_positions(pos, f.size(), seed++);
    benchmark::DoNotOptimize(first_fit_color(f, pos, scratch, out).max_color);
  }
  state.SetItemsProcessed(state.iterations() * f.size());
}
BENCHMARK(BM_PositionKernel)->Unit(benchmark::kMicrosecond);

void BM_EstimateSerial(benchmark::State& state) {
  const Forest f = generate(FamilySpec::prufer(10'000), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_expected_colors_serial(f, 200, 1, {1, OrderModel::shuffle, CheckMode::never}).mean);
  }
}
BENCHMARK(BM_EstimateSerial)->Unit(benchmark::kMillisecond);

void BM_EstimateParallel(benchmark::State& state) {
  const Forest f = generate(FamilySpec::prufer(10'000), 1);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_expected_colors(f, 200, 1, {threads, OrderModel::shuffle, CheckMode::never}).mean);
  }
}
BENCHMARK(BM_EstimateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
