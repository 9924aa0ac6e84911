#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "dagdiff/errors.hpp"
#include "dagdiff/metrics.hpp"
#include "dagdiff/rng.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dagdiff;

namespace {

Prediction pred(RectF b, double score, long rec = 0) { return Prediction{b, std::nullopt, score, rec}; }
Target target(RectF b, long rec = 0) { return Target{b, std::nullopt, rec}; }

RectF random_rect(Rng& rng) {
  const double x = rng.uniform_int(0, 9), y = rng.uniform_int(0, 9);
  return RectF{x, y, x + rng.uniform_int(1, 4), y + rng.uniform_int(1, 4)};
}

struct Instance {
  std::vector<Prediction> preds;
  std::vector<Target> targets;
};

Instance random_instance(Rng& rng) {
  Instance in;
  const int nt = rng.uniform_int(1, 8), np = rng.uniform_int(0, 10);
  for (int i = 0; i < nt; ++i) in.targets.push_back(target(random_rect(rng), rng.uniform_int(0, 1)));
  for (int i = 0; i < np; ++i)
    in.preds.push_back(pred(random_rect(rng), rng.uniform_int(0, 20) / 20.0, rng.uniform_int(0, 1)));
  return in;
}

}  // namespace

TEST(Iou, Examples) {
  EXPECT_DOUBLE_EQ(iou(RectF{0, 0, 2, 2}, RectF{0, 0, 2, 2}), 1.0);
  EXPECT_DOUBLE_EQ(iou(RectF{0, 0, 1, 1}, RectF{2, 2, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(iou(RectF{0, 0, 2, 1}, RectF{1, 0, 3, 1}), 1.0 / 3.0);
  EXPECT_THROW(iou(RectF{0, 0, 0, 1}, RectF{0, 0, 1, 1}), EmptyRegion);
  EXPECT_EQ(rect_from_pixels(PixelBox{2, 3, 4, 3}), (RectF{2, 3, 5, 4}));
}

TEST(Iou, MaskBoundsAndEquality) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    BitImage a(12, 9), b(12, 9);
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 12; ++x) {
        a.set(x, y, rng.bernoulli(0.3));
        b.set(x, y, rng.bernoulli(0.3));
      }
    a.set(0, 0);
    b.set(0, 0);
    const double v = iou(a, b);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v == 1.0, a == b);
    EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  }
  EXPECT_THROW(iou(BitImage(3, 3), BitImage(3, 3)), EmptyRegion);
}

TEST(Match, Examples) {
  const std::vector<Target> t{target({0, 0, 10, 10}), target({20, 20, 30, 30})};
  // Both predictions overlap the first target; the higher score wins it.
  const std::vector<Prediction> p{pred({0, 0, 10, 9}, 0.5), pred({0, 0, 10, 10}, 0.9), pred({50, 50, 60, 60}, 0.99)};
  const MatchResult m = match_predictions(p, t);
  EXPECT_EQ(m.pred_target, (std::vector<long>{-1, 0, -1}));
  EXPECT_EQ(m.tp, 1u);
  EXPECT_EQ(m.fp, 2u);
  EXPECT_EQ(m.fn, 1u);

  // IoU exactly at the threshold does not match.
  const MatchResult edge = match_predictions({pred({0, 0, 2, 1}, 1.0)}, {target({0, 0, 1, 1})}, 0.5);
  EXPECT_EQ(edge.tp, 0u);

  // Records never match across.
  EXPECT_EQ(match_predictions({pred({0, 0, 10, 10}, 1.0, 1)}, {target({0, 0, 10, 10}, 0)}).tp, 0u);
}

TEST(Match, AgreesWithBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance in = random_instance(rng);
    const double thr = rng.bernoulli(0.5) ? 0.5 : 0.3;
    const MatchResult m = match_predictions(in.preds, in.targets, thr);
    EXPECT_EQ((oracle::Counts{m.tp, m.fp, m.fn}), oracle::brute_match(in.preds, in.targets, thr));
    EXPECT_EQ(m.tp + m.fp, in.preds.size());
    EXPECT_EQ(m.tp + m.fn, in.targets.size());
  }
}

TEST(Scores, PrecisionRecallF1) {
  EXPECT_DOUBLE_EQ(*precision(3, 1), 0.75);
  EXPECT_DOUBLE_EQ(*recall(4, 0), 1.0);
  EXPECT_DOUBLE_EQ(*recall(0, 5), 0.0);
  EXPECT_FALSE(precision(0, 0).has_value());
  EXPECT_FALSE(recall(0, 0).has_value());
  EXPECT_DOUBLE_EQ(*f1(0.5, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(*f1(1.0, 1.0), 1.0);
  EXPECT_NEAR(*f1(0.647, 0.940), 2 * 0.647 * 0.940 / (0.647 + 0.940), 1e-12);
  EXPECT_NEAR(*f1(0.647, 0.940), 0.7665, 0.001);
  EXPECT_FALSE(f1(0.0, 0.0).has_value());
}

TEST(Ap, Examples) {
  const std::vector<Target> t{target({0, 0, 10, 10}), target({20, 20, 30, 30})};
  EXPECT_DOUBLE_EQ(average_precision({pred({0, 0, 10, 10}, 0.9), pred({20, 20, 30, 30}, 0.8)}, t).ap, 1.0);
  EXPECT_DOUBLE_EQ(average_precision({pred({50, 50, 60, 60}, 0.9)}, t).ap, 0.0);
  EXPECT_DOUBLE_EQ(average_precision({}, t).ap, 0.0);
  // FP first then TP: the envelope lifts the first point to 1/2.
  const auto r = average_precision({pred({50, 50, 60, 60}, 0.9), pred({0, 0, 10, 10}, 0.8)}, t);
  EXPECT_DOUBLE_EQ(r.ap, 0.25);
  EXPECT_EQ(r.curve, (std::vector<PrPoint>{{0.0, 0.5}, {0.5, 0.5}}));
  EXPECT_THROW(average_precision({}, {}), NoTargets);
}

TEST(Ap, AgreesWithCutoffOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 1500; ++trial) {
    const Instance in = random_instance(rng);
    for (auto interp : {ApInterpolation::Envelope, ApInterpolation::Trapezoid}) {
      const ApResult r = average_precision(in.preds, in.targets, 0.5, IouMode::Box, interp);
      EXPECT_NEAR(r.ap, oracle::ap_by_cutoffs(in.preds, in.targets, 0.5, interp), 1e-9);
      EXPECT_GE(r.ap, 0.0);
      EXPECT_LE(r.ap, 1.0);
      EXPECT_NEAR(curve_area(r.curve, interp), r.ap, 1e-12);
    }
  }
}

TEST(Ap, DroppingFalsePositiveNeverHurts) {
  Rng rng(4);
  for (int trial = 0; trial < 1500; ++trial) {
    const Instance in = random_instance(rng);
    const MatchResult m = match_predictions(in.preds, in.targets);
    const double base = average_precision(in.preds, in.targets).ap;
    for (std::size_t i = 0; i < in.preds.size(); ++i) {
      if (m.pred_target[i] >= 0) continue;
      auto fewer = in.preds;
      fewer.erase(fewer.begin() + static_cast<long>(i));
      EXPECT_GE(average_precision(fewer, in.targets).ap, base - 1e-12);
    }
  }
}

TEST(Ap, OnlyRankMatters) {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance in = random_instance(rng);
    auto mapped = in.preds;
    for (auto& p : mapped) p.score = p.score * p.score * 0.5 + 0.1;  // strictly increasing on [0, 1]
    EXPECT_DOUBLE_EQ(average_precision(mapped, in.targets).ap, average_precision(in.preds, in.targets).ap);
  }
}

TEST(Evaluate, ScoreThresholdAndReports) {
  const std::vector<Target> t{target({0, 0, 10, 10}), target({20, 20, 30, 30})};
  const std::vector<Prediction> p{pred({0, 0, 10, 10}, 0.95), pred({20, 20, 30, 30}, 0.92), pred({60, 60, 70, 70}, 0.99)};
  const EvalReport r = evaluate(p, t);
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_DOUBLE_EQ(*r.precision, 0.5);
  EXPECT_DOUBLE_EQ(*r.recall, 0.5);
  EXPECT_EQ(r.n_predictions, 3u);
  EXPECT_EQ(r.pr_curve.size(), 3u);

  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(j.at("tp"), 1);
  EXPECT_DOUBLE_EQ(j.at("ap").get<double>(), r.ap);
  EXPECT_EQ(j.at("pr_curve").size(), 3u);

  const std::string csv = pr_curve_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rank,recall,precision");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

  const EvalReport none = evaluate({pred({0, 0, 1, 1}, 0.1)}, t);
  EXPECT_FALSE(none.precision.has_value());
  EXPECT_FALSE(none.f1.has_value());
}

TEST(Predictions, ReadAndReject) {
  const fs::path dir = fs::temp_directory_path() / ("dagdiff_preds_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto put = [&](const std::string& text) {
    std::ofstream(dir / "p.json") << text;
    return dir / "p.json";
  };
  const auto ok = read_predictions(put(R"([{"record_index": 3, "box": [1, 2, 5, 6], "score": 0.5}])"));
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_EQ(ok[0].box, (RectF{1, 2, 5, 6}));
  EXPECT_EQ(ok[0].record_index, 3);

  const auto index_of = [&](const std::string& text) -> long {
    try {
      read_predictions(put(text));
    } catch (const FormatError& e) {
      return e.record_index();
    }
    return -2;
  };
  EXPECT_EQ(index_of(R"([{"record_index": 0, "box": [0, 0, 1, 1], "score": 0.1},
                         {"record_index": 0, "box": [0, 0, 1], "score": 0.1}])"),
            1);
  EXPECT_EQ(index_of(R"([{"record_index": 0, "box": [0, 0, 1, 1], "score": 1.5}])"), 0);
  EXPECT_EQ(index_of(R"([{"record_index": 0, "box": [3, 0, 1, 1], "score": 0.5}])"), 0);
  EXPECT_THROW(read_predictions(put("{}")), FormatError);
  EXPECT_THROW(read_predictions(dir / "missing.json"), IoError);
  fs::remove_all(dir);
}
