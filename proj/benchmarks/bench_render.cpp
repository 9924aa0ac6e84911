#include <benchmark/benchmark.h>

#include "common.hpp"
#include "dagdiff/differ.hpp"
#include "dagdiff/render.hpp"

using namespace dagdiff;

static void BM_RenderGraph(benchmark::State& state) {
  const auto& ps = bench::pairs(DensityClass::Sparse);
  const RenderStyle style;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(render_graph(ps[i++ % ps.size()].alternative, style));
}
BENCHMARK(BM_RenderGraph)->Unit(benchmark::kMillisecond);

static void BM_RenderDiff(benchmark::State& state) {
  const auto& ps = bench::pairs(DensityClass::Sparse);
  const RenderStyle style;
  std::size_t i = 0;
  for (auto _ : state) {
    const DagPair& p = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(render_diff(p, gt_diff(p), style));
  }
}
BENCHMARK(BM_RenderDiff)->Unit(benchmark::kMillisecond);

static void BM_ConnectedComponents(benchmark::State& state) {
  const BitImage ink = binarize(render_graph(bench::pairs(DensityClass::Sparse)[0].alternative, RenderStyle{}));
  for (auto _ : state) benchmark::DoNotOptimize(connected_components(ink));
}
BENCHMARK(BM_ConnectedComponents)->Unit(benchmark::kMillisecond);

static void BM_EncodePng(benchmark::State& state) {
  const Image img = render_graph(bench::pairs(DensityClass::Sparse)[0].alternative, RenderStyle{});
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(img));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);
