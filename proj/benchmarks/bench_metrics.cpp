#include <benchmark/benchmark.h>

#include "dagdiff/metrics.hpp"
#include "dagdiff/rng.hpp"

using namespace dagdiff;

namespace {

struct Batch {
  std::vector<Prediction> preds;
  std::vector<Target> targets;
};

// n records with up to four targets each and twice as many noisy predictions.
Batch make_batch(int records) {
  Rng rng(3);
  Batch b;
  for (int r = 0; r < records; ++r)
    for (int t = 0; t < rng.uniform_int(1, 4); ++t) {
      const double x = rng.uniform01() * 700, y = rng.uniform01() * 700;
      b.targets.push_back(Target{RectF{x, y, x + 60, y + 60}, std::nullopt, r});
      for (int k = 0; k < 2; ++k) {
        const double dx = (rng.uniform01() - 0.5) * 40, dy = (rng.uniform01() - 0.5) * 40;
        b.preds.push_back(Prediction{RectF{x + dx, y + dy, x + dx + 60, y + dy + 60}, std::nullopt, rng.uniform01(), r});
      }
    }
  return b;
}

}  // namespace

static void BM_MatchPredictions(benchmark::State& state) {
  const Batch b = make_batch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(match_predictions(b.preds, b.targets));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(b.preds.size()));
}
BENCHMARK(BM_MatchPredictions)->Arg(10)->Arg(100)->Arg(1000);

static void BM_Evaluate(benchmark::State& state) {
  const Batch b = make_batch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(b.preds, b.targets));
}
BENCHMARK(BM_Evaluate)->Arg(100)->Arg(1000);
