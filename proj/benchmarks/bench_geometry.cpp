#include <benchmark/benchmark.h>

#include "common.hpp"
#include "dagdiff/differ.hpp"
#include "dagdiff/layout.hpp"
#include "dagdiff/rng.hpp"

using namespace dagdiff;

// Random segments on an 800 px canvas; edges are O(E^2) checked pairwise.
static void BM_EdgeCrossings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  Dag g;
  for (int i = 1; i <= n; ++i) g.add_node(NodeId{i}, Point{rng.uniform01() * 800, rng.uniform01() * 800});
  for (int i = 2; i <= n; ++i) {
    g.add_edge(NodeId{rng.uniform_int(1, i - 1)}, NodeId{i});
    g.add_edge(NodeId{rng.uniform_int(1, i - 1)}, NodeId{i});
  }
  for (auto _ : state) benchmark::DoNotOptimize(edge_crossings(g));
  state.SetComplexityN(static_cast<long>(g.edge_count()));
}
BENCHMARK(BM_EdgeCrossings)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNSquared);

static void BM_LayoutUnion(benchmark::State& state) {
  const auto& ps = bench::pairs(DensityClass::Sparse);
  const LayoutConfig layout;
  std::size_t i = 0;
  for (auto _ : state) {
    DagPair p = ps[i++ % ps.size()];
    p.base.clear_positions();
    p.alternative.clear_positions();
    benchmark::DoNotOptimize(layout_union(p, layout));
  }
}
BENCHMARK(BM_LayoutUnion)->Unit(benchmark::kMicrosecond);

static void BM_DfsSelect(benchmark::State& state) {
  const auto& p = bench::pairs(DensityClass::Sparse)[0];
  const DiffSet gt = gt_diff(p);
  const int boxes = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<RoiBox> rois;
  for (int i = 0; i < boxes; ++i) {
    const double x = rng.uniform01() * 700, y = rng.uniform01() * 700;
    rois.push_back(RoiBox{rng.bernoulli(0.7), Box{x, x + 180, y, y + 180}, Factor::EdgeCrossing, GraphSide::Alternative});
  }
  const RenderStyle style;
  for (auto _ : state) benchmark::DoNotOptimize(dfs_select(gt, rois, p, style));
}
BENCHMARK(BM_DfsSelect)->Arg(4)->Arg(32)->Arg(256)->Unit(benchmark::kMicrosecond);
