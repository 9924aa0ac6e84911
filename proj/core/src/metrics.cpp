#include "dagdiff/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

std::vector<std::size_t> rank_by_score(const std::vector<Prediction>& preds) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return preds[a].score > preds[b].score; });
  return order;
}

double region_iou(const Prediction& p, const Target& t, IouMode mode) {
  if (mode == IouMode::Box) return iou(p.box, t.box);
  if (!p.mask || !t.mask) throw EmptyRegion("mask IoU needs masks on both sides");
  return iou(*p.mask, *t.mask);
}

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

RectF rect_from_pixels(const PixelBox& p) {
  return RectF{static_cast<double>(p.x0), static_cast<double>(p.y0), static_cast<double>(p.x1) + 1.0,
               static_cast<double>(p.y1) + 1.0};
}

double iou(const RectF& a, const RectF& b) {
  if (a.area() <= 0.0 || b.area() <= 0.0) throw EmptyRegion("box with zero area");
  const RectF i{std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min), std::min(a.x_max, b.x_max),
                std::min(a.y_max, b.y_max)};
  const double inter = i.area();
  return inter / (a.area() + b.area() - inter);
}

double iou(const BitImage& a, const BitImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw EmptyRegion("masks differ in size");
  std::size_t inter = 0, uni = 0, na = 0, nb = 0;
  const auto ba = a.bits();
  const auto bb = b.bits();
  for (std::size_t i = 0; i < ba.size(); ++i) {
    na += ba[i];
    nb += bb[i];
    inter += ba[i] & bb[i];
    uni += ba[i] | bb[i];
  }
  if (na == 0 || nb == 0) throw EmptyRegion("empty mask");
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MatchResult match_predictions(const std::vector<Prediction>& preds, const std::vector<Target>& targets, double iou_thr,
                              IouMode mode) {
  MatchResult m;
  m.pred_target.assign(preds.size(), -1);
  m.target_matched.assign(targets.size(), false);
  for (std::size_t pi : rank_by_score(preds)) {
    long best = -1;
    double best_iou = -1.0;
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
      if (m.target_matched[ti] || targets[ti].record_index != preds[pi].record_index) continue;
      const double v = region_iou(preds[pi], targets[ti], mode);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<long>(ti);
      }
    }
    if (best >= 0 && best_iou > iou_thr) {
      m.pred_target[pi] = best;
      m.target_matched[static_cast<std::size_t>(best)] = true;
      ++m.tp;
    } else {
      ++m.fp;
    }
  }
  m.fn = targets.size() - m.tp;
  return m;
}

std::optional<double> precision(std::size_t tp, std::size_t fp) {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> recall(std::size_t tp, std::size_t fn) {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> f1(double p, double r) {
  if (p + r <= 0.0) return std::nullopt;
  return 2.0 * p * r / (p + r);
}

double curve_area(const std::vector<PrPoint>& curve, ApInterpolation interp) {
  double area = 0.0;
  double prev_r = 0.0;
  double prev_p = curve.empty() ? 0.0 : curve.front().precision;
  for (const PrPoint& pt : curve) {
    const double dr = pt.recall - prev_r;
    area += interp == ApInterpolation::Envelope ? dr * pt.precision : dr * (pt.precision + prev_p) / 2.0;
    prev_r = pt.recall;
    prev_p = pt.precision;
  }
  return area;
}

ApResult average_precision(const std::vector<Prediction>& preds, const std::vector<Target>& targets, double iou_thr,
                           IouMode mode, ApInterpolation interp) {
  if (targets.empty()) throw NoTargets("average precision needs at least one target");
  const MatchResult m = match_predictions(preds, targets, iou_thr, mode);
  ApResult out;
  std::size_t tp = 0, fp = 0;
  for (std::size_t pi : rank_by_score(preds)) {
    (m.pred_target[pi] >= 0 ? tp : fp) += 1;
    out.curve.push_back({static_cast<double>(tp) / static_cast<double>(targets.size()),
                         static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }
  if (interp == ApInterpolation::Envelope)
    for (std::size_t i = out.curve.size(); i-- > 1;)
      out.curve[i - 1].precision = std::max(out.curve[i - 1].precision, out.curve[i].precision);
  out.ap = curve_area(out.curve, interp);
  return out;
}

EvalReport evaluate(const std::vector<Prediction>& preds, const std::vector<Target>& targets, double iou_thr,
                    double score_thr, IouMode mode, ApInterpolation interp) {
  EvalReport r;
  r.iou_threshold = iou_thr;
  r.score_threshold = score_thr;
  r.n_predictions = preds.size();
  r.n_targets = targets.size();

  std::vector<Prediction> confident;
  for (const Prediction& p : preds)
    if (p.score > score_thr) confident.push_back(p);
  const MatchResult m = match_predictions(confident, targets, iou_thr, mode);
  r.tp = m.tp;
  r.fp = m.fp;
  r.fn = m.fn;
  r.precision = precision(m.tp, m.fp);
  r.recall = recall(m.tp, m.fn);
  if (r.precision && r.recall) r.f1 = f1(*r.precision, *r.recall);

  const ApResult ap = average_precision(preds, targets, iou_thr, mode, interp);
  r.ap = ap.ap;
  r.pr_curve = ap.curve;
  return r;
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["precision"] = opt(r.precision);
  j["recall"] = opt(r.recall);
  j["f1"] = opt(r.f1);
  j["ap"] = r.ap;
  j["iou_threshold"] = r.iou_threshold;
  j["score_threshold"] = r.score_threshold;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  j["n_predictions"] = r.n_predictions;
  j["n_targets"] = r.n_targets;
  j["pr_curve"] = nlohmann::ordered_json::array();
  for (const PrPoint& p : r.pr_curve) j["pr_curve"].push_back({p.recall, p.precision});
  return j.dump(2) + "\n";
}

std::string pr_curve_csv(const EvalReport& r) {
  std::string out = "rank,recall,precision\n";
  char buf[96];
  for (std::size_t i = 0; i < r.pr_curve.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.9f,%.9f\n", i + 1, r.pr_curve[i].recall, r.pr_curve[i].precision);
    out += buf;
  }
  return out;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw FormatError(path.string() + ": expected a JSON array");
  std::vector<Prediction> out;
  long index = 0;
  for (const auto& o : j) {
    Prediction p;
    try {
      const auto box = o.at("box").get<std::vector<double>>();
      if (box.size() != 4) throw FormatError("box needs four numbers");
      p.box = RectF{box[0], box[1], box[2], box[3]};
      p.score = o.at("score").get<double>();
      p.record_index = o.at("record_index").get<long>();
      if (auto m = o.find("mask"); m != o.end() && !m->is_null())
        p.mask = decode_png_mask(read_file(path.parent_path() / m->get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(e.what(), index);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), index);
    }
    if (!(p.score >= 0.0 && p.score <= 1.0)) throw FormatError("score outside [0, 1]", index);
    if (!(p.box.x_max > p.box.x_min && p.box.y_max > p.box.y_min)) throw FormatError("degenerate box", index);
    out.push_back(std::move(p));
    ++index;
  }
  return out;
}

}  // namespace dagdiff
