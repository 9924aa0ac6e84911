#include "dagdiff/factors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dagdiff/errors.hpp"
#include "dagdiff/hull.hpp"
#include "dagdiff/layout.hpp"

namespace dagdiff {
namespace {

std::vector<RoiBox> component_boxes(const BitImage& mask, Factor factor, GraphSide side) {
  std::vector<RoiBox> out;
  for (const PixelBox& p : connected_components(mask).boxes) out.push_back({true, box_from_pixels(p), factor, side});
  return out;
}

Box bounds_of(const std::vector<Point>& pts) {
  Box b{pts.front().x, pts.front().x, pts.front().y, pts.front().y};
  for (const Point& p : pts) {
    b.x_min = std::min(b.x_min, p.x);
    b.x_max = std::max(b.x_max, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

}  // namespace

std::string_view to_string(Factor f) {
  switch (f) {
    case Factor::Symmetry: return "symmetry";
    case Factor::Shape: return "shape";
    case Factor::EdgeCrossing: return "edge_crossing";
    case Factor::Depth: return "depth";
    case Factor::Density: return "density";
    case Factor::WhiteSpace: return "white_space";
  }
  return "?";
}

std::string_view to_string(GraphSide s) {
  switch (s) {
    case GraphSide::Base: return "base";
    case GraphSide::Alternative: return "alternative";
    case GraphSide::Pair: return "pair";
  }
  return "?";
}

PixelBox Box::pixels(int width, int height) const {
  PixelBox p;
  p.x0 = std::max(0, static_cast<int>(std::floor(x_min)));
  p.y0 = std::max(0, static_cast<int>(std::floor(y_min)));
  p.x1 = std::min(width - 1, static_cast<int>(std::floor(x_max)));
  p.y1 = std::min(height - 1, static_cast<int>(std::floor(y_max)));
  return p;
}

Box box_from_pixels(const PixelBox& p) {
  return Box{static_cast<double>(p.x0), static_cast<double>(p.x1), static_cast<double>(p.y0), static_cast<double>(p.y1)};
}

bool intersects_canvas(const Box& b, int width, int height) {
  return b.x_min <= b.x_max && b.y_min <= b.y_max && !b.pixels(width, height).empty();
}

void check(const FovGeometry& g) {
  if (!(g.omega_deg > 0 && g.omega_deg < 90)) throw InvalidConfig("omega must lie in (0, 90) degrees");
  if (!(g.f_mm > 0)) throw InvalidConfig("viewing distance must be positive");
  if (!(g.px_per_mm > 0)) throw InvalidConfig("px_per_mm must be positive");
}

double fov_diameter_mm(const FovGeometry& g) {
  return 2.0 * g.f_mm * std::tan(g.omega_deg * std::numbers::pi / 360.0);
}

double fov_side_mm(const FovGeometry& g) {
  const double d = fov_diameter_mm(g);
  return (g.whole_mm_diameter ? std::round(d) : d) / std::numbers::sqrt2;
}

double fov_side_px(const FovGeometry& g) { return fov_side_mm(g) * g.px_per_mm; }

Box fov_box(const FovGeometry& g, Point focus) {
  const double h = fov_side_px(g) / 2.0;
  return Box{focus.x - h, focus.x + h, focus.y - h, focus.y + h};
}

void check(const FactorThresholds& t) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(t.density_sparse) || !unit(t.density_dense) || t.density_sparse >= t.density_dense)
    throw InvalidConfig("density thresholds must satisfy 0 <= sparse < dense <= 1");
  if (!unit(t.crossing_supportive)) throw InvalidConfig("crossing probability must lie in [0, 1]");
  if (!unit(t.hull_gap_ratio) || !unit(t.white_ratio)) throw InvalidConfig("white space ratios must lie in [0, 1]");
  if (t.kernel < 1) throw InvalidConfig("kernel size must be positive");
  if (t.density_stride_div < 1) throw InvalidConfig("density stride divisor must be positive");
  if (t.symmetry_tolerance < 0) throw InvalidConfig("symmetry tolerance must be non-negative");
}

bool mirror_symmetric(const Dag& g, double tol) {
  const auto& nodes = g.node_entries();
  if (nodes.empty()) return false;
  double cx = 0.0;
  for (const auto& n : nodes) cx += g.at(n.id).x;
  cx /= static_cast<double>(nodes.size());

  std::map<NodeId, NodeId> mirror;
  for (const auto& n : nodes) {
    const Point p = g.at(n.id);
    const Point want{2.0 * cx - p.x, p.y};
    std::optional<NodeId> best;
    double best_d = tol;
    for (const auto& m : nodes) {
      const Point q = g.at(m.id);
      const double d = std::hypot(q.x - want.x, q.y - want.y);
      if (d <= best_d) {
        best_d = d;
        best = m.id;
      }
    }
    if (!best) return false;
    mirror[n.id] = *best;
  }
  for (const auto& [a, b] : mirror)
    if (mirror.at(b) != a) return false;
  for (const Edge& e : g.edges())
    if (!g.has_edge(Edge{mirror.at(e.source), mirror.at(e.target)})) return false;
  return true;
}

std::vector<RoiBox> symmetry_rois(const Dag& g, GraphSide side, double tol) {
  if (g.node_count() == 0 || !mirror_symmetric(g, tol)) return {};
  return {RoiBox{true, bounds_of(node_positions(g)), Factor::Symmetry, side}};
}

std::vector<RoiBox> shape_rois(const DagPair& pair, int width, int height) {
  const BitImage h1 = rasterize_polygon(concave_hull(node_positions(pair.base)), width, height);
  const BitImage h2 = rasterize_polygon(concave_hull(node_positions(pair.alternative)), width, height);
  BitImage x(width, height);
  for (int y = 0; y < height; ++y)
    for (int xx = 0; xx < width; ++xx)
      if (h1.at(xx, y) != h2.at(xx, y)) x.set(xx, y);
  return component_boxes(x, Factor::Shape, GraphSide::Pair);
}

std::vector<RoiBox> crossing_rois(const Dag& g, GraphSide side, const FovGeometry& geom, Rng& rng,
                                  double p_supportive) {
  std::vector<RoiBox> out;
  for (const Crossing& c : edge_crossings(g))
    out.push_back({rng.bernoulli(p_supportive), fov_box(geom, c.at), Factor::EdgeCrossing, side});
  return out;
}

std::vector<RoiBox> depth_rois(const DagPair& pair) {
  const Layering l1 = depth_and_layers(pair.base);
  const Layering l2 = depth_and_layers(pair.alternative);
  if (l2.depth <= l1.depth) return {};
  const double deepest = l1.layer_y.empty() ? -1e300 : l1.layer_y.back();

  const Dag& g = pair.alternative;
  std::vector<Point> pts;
  for (const auto& n : g.node_entries())
    if (g.at(n.id).y > deepest + kLayerTolerance) pts.push_back(g.at(n.id));
  if (pts.empty()) return {};
  for (const Edge& e : g.edges()) {
    const Point s = g.at(e.source);
    const Point t = g.at(e.target);
    if (s.y > deepest + kLayerTolerance || t.y > deepest + kLayerTolerance) {
      pts.push_back(s);
      pts.push_back(t);
    }
  }
  return {RoiBox{true, bounds_of(pts), Factor::Depth, GraphSide::Pair}};
}

std::vector<RoiBox> density_rois(const BitImage& ink, const FovGeometry& geom, const FactorThresholds& t) {
  const int w = ink.width();
  const int h = ink.height();
  const double side = fov_side_px(geom);
  const double stride = side / t.density_stride_div;
  const IntegralImage sums(ink);

  std::vector<RoiBox> out;
  const int nx = static_cast<int>(std::ceil(w / stride));
  const int ny = static_cast<int>(std::ceil(h / stride));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const Box window = fov_box(geom, Point{i * stride, j * stride});
      const PixelBox p = window.pixels(w, h);
      if (p.empty()) continue;
      const double area = static_cast<double>(p.x1 - p.x0 + 1) * (p.y1 - p.y0 + 1);
      const std::int64_t count = sums.sum(p.x0, p.y0, p.x1 + 1, p.y1 + 1);
      const double ratio = static_cast<double>(count) / area;
      const Box clipped{std::max(window.x_min, 0.0), std::min(window.x_max, w - 1.0), std::max(window.y_min, 0.0),
                        std::min(window.y_max, h - 1.0)};
      if (ratio > t.density_dense)
        out.push_back({false, clipped, Factor::Density, GraphSide::Alternative});
      else if (count > 0 && ratio <= t.density_sparse)
        out.push_back({true, clipped, Factor::Density, GraphSide::Alternative});
    }
  }
  return out;
}

std::vector<RoiBox> whitespace_rois(const Dag& g, const BitImage& ink, GraphSide side, const FactorThresholds& t) {
  const int w = ink.width();
  const int h = ink.height();
  const auto pts = node_positions(g);
  const BitImage concave = rasterize_polygon(concave_hull(pts), w, h);
  const BitImage convex = rasterize_polygon(convex_hull(pts), w, h);
  const std::size_t convex_px = convex.count();
  if (convex_px == 0) return {};

  BitImage gap(w, h);
  std::size_t gap_px = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (convex.at(x, y) && !concave.at(x, y)) {
        gap.set(x, y);
        ++gap_px;
      }
  if (static_cast<double>(gap_px) / static_cast<double>(convex_px) > t.hull_gap_ratio)
    return component_boxes(gap, Factor::WhiteSpace, side);

  // Kernel tiles centered inside the concave hull that are mostly white.
  const int k = t.kernel;
  const int tw = (w + k - 1) / k;
  const int th = (h + k - 1) / k;
  const IntegralImage sums(ink);
  BitImage tiles(tw, th);
  for (int ty = 0; ty < th; ++ty) {
    for (int tx = 0; tx < tw; ++tx) {
      const int x0 = tx * k;
      const int y0 = ty * k;
      const int x1 = std::min(w, x0 + k);
      const int y1 = std::min(h, y0 + k);
      if (!concave.at(std::min(x0 + k / 2, w - 1), std::min(y0 + k / 2, h - 1))) continue;
      const double area = static_cast<double>(x1 - x0) * (y1 - y0);
      const double white = area - static_cast<double>(sums.sum(x0, y0, x1, y1));
      if (white / area > t.white_ratio) tiles.set(tx, ty);
    }
  }
  std::vector<RoiBox> out;
  for (const PixelBox& p : connected_components(tiles).boxes) {
    const PixelBox px{p.x0 * k, p.y0 * k, std::min(w - 1, p.x1 * k + k - 1), std::min(h - 1, p.y1 * k + k - 1)};
    out.push_back({true, box_from_pixels(px), Factor::WhiteSpace, side});
  }
  return out;
}

}  // namespace dagdiff
