#include <benchmark/benchmark.h>

#include "common.hpp"
#include "dagdiff/pipeline.hpp"

using namespace dagdiff;

static void BM_Annotate(benchmark::State& state, DensityClass cls) {
  const auto& ps = bench::pairs(cls);
  PipelineConfig cfg;
  cfg.gen.density_class = cls;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(annotate(ps[i++ % ps.size()], cfg));
}
BENCHMARK_CAPTURE(BM_Annotate, tree, DensityClass::TreeLike)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Annotate, sparse, DensityClass::Sparse)->Unit(benchmark::kMillisecond);

static void BM_ComputeRois(benchmark::State& state) {
  const auto& ps = bench::pairs(DensityClass::Sparse);
  const PipelineConfig cfg;
  std::vector<std::pair<BitImage, BitImage>> ink;
  for (const DagPair& p : ps)
    ink.emplace_back(binarize(render_graph(p.base, cfg.style)), binarize(render_graph(p.alternative, cfg.style)));
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ % ps.size();
    benchmark::DoNotOptimize(compute_rois(ps[k], ink[k].first, ink[k].second, cfg));
  }
}
BENCHMARK(BM_ComputeRois)->Unit(benchmark::kMillisecond);

static void BM_InstanceMasks(benchmark::State& state) {
  const auto& ps = bench::pairs(DensityClass::Sparse);
  const RenderStyle style;
  std::size_t i = 0;
  for (auto _ : state) {
    const DagPair& p = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(instance_masks(p, gt_diff(p), style));
  }
}
BENCHMARK(BM_InstanceMasks)->Unit(benchmark::kMillisecond);
