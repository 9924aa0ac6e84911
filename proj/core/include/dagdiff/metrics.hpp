#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dagdiff/image.hpp"

namespace dagdiff {

/// Continuous box [x_min, x_max] x [y_min, y_max]; area is width * height.
/// A pixel-inclusive box [x0, x1] covers the continuous box [x0, x1 + 1].
struct RectF {
  double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
  [[nodiscard]] double area() const { return std::max(0.0, x_max - x_min) * std::max(0.0, y_max - y_min); }
  friend constexpr bool operator==(const RectF&, const RectF&) = default;
};

RectF rect_from_pixels(const PixelBox& p);

/// Throws EmptyRegion when either region has zero area.
double iou(const RectF& a, const RectF& b);
/// Pixel-count IoU. Throws EmptyRegion when either mask is empty or the
/// masks differ in size.
double iou(const BitImage& a, const BitImage& b);

struct Prediction {
  RectF box;
  std::optional<BitImage> mask;
  double score = 0.0;
  long record_index = 0;
};

struct Target {
  RectF box;
  std::optional<BitImage> mask;
  long record_index = 0;
};

enum class IouMode { Box, Mask };

/// Greedy one-to-one matching. Predictions are visited by descending score
/// (input order on ties); each claims the unclaimed target of its record with
/// the highest IoU (lowest index on ties) when that IoU exceeds the threshold.
struct MatchResult {
  std::vector<long> pred_target;   // per prediction, -1 for a false positive
  std::vector<bool> target_matched;
  std::size_t tp = 0, fp = 0, fn = 0;
};

MatchResult match_predictions(const std::vector<Prediction>& preds, const std::vector<Target>& targets,
                              double iou_thr = 0.5, IouMode mode = IouMode::Box);

/// Absent when the denominator is zero.
std::optional<double> precision(std::size_t tp, std::size_t fp);
std::optional<double> recall(std::size_t tp, std::size_t fn);
/// Harmonic mean 2pr / (p + r); absent when p + r = 0.
std::optional<double> f1(double p, double r);

enum class ApInterpolation {
  Envelope,   // precision replaced by its running maximum from the right
  Trapezoid,  // straight segments between raw points, starting at (0, p1)
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
  friend constexpr bool operator==(const PrPoint&, const PrPoint&) = default;
};

/// AP and the curve it integrates. For the envelope the curve is a step
/// function: each point's precision holds on (previous recall, recall].
struct ApResult {
  double ap = 0.0;
  std::vector<PrPoint> curve;
};

/// One curve point per ranked prediction. Throws NoTargets.
ApResult average_precision(const std::vector<Prediction>& preds, const std::vector<Target>& targets,
                           double iou_thr = 0.5, IouMode mode = IouMode::Box,
                           ApInterpolation interp = ApInterpolation::Envelope);

/// Area under a curve in the form returned by average_precision.
double curve_area(const std::vector<PrPoint>& curve, ApInterpolation interp);

struct EvalReport {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  double ap = 0.0;
  std::vector<PrPoint> pr_curve;
  double iou_threshold = 0.5;
  double score_threshold = 0.92;
  std::size_t tp = 0, fp = 0, fn = 0;
  std::size_t n_predictions = 0, n_targets = 0;
};

/// Precision, recall and F1 count predictions with score > score_thr; AP
/// ranks all predictions.
EvalReport evaluate(const std::vector<Prediction>& preds, const std::vector<Target>& targets, double iou_thr = 0.5,
                    double score_thr = 0.92, IouMode mode = IouMode::Box,
                    ApInterpolation interp = ApInterpolation::Envelope);

std::string report_json(const EvalReport& r);
std::string pr_curve_csv(const EvalReport& r);

/// JSON array of {"record_index", "box": [x0, y0, x1, y1], "score", "mask"?}.
/// Mask paths are 1-bit PNGs relative to the file. Throws FormatError with
/// the entry index, or IoError.
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

}  // namespace dagdiff
