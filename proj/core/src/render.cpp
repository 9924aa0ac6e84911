#include "dagdiff/render.hpp"

#include <algorithm>
#include <cmath>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

struct Bounds {
  double x0, y0, x1, y1;
};

// Calls f(x, y) for every canvas pixel whose center falls inside `b`.
template <class F>
void for_pixels_in(const Bounds& b, const RenderStyle& style, F&& f) {
  const int ix0 = std::max(0, static_cast<int>(std::ceil(b.x0 - 0.5)));
  const int ix1 = std::min(style.width - 1, static_cast<int>(std::floor(b.x1 - 0.5)));
  const int iy0 = std::max(0, static_cast<int>(std::ceil(b.y0 - 0.5)));
  const int iy1 = std::min(style.height - 1, static_cast<int>(std::floor(b.y1 - 0.5)));
  for (int y = iy0; y <= iy1; ++y)
    for (int x = ix0; x <= ix1; ++x) f(x, y, x + 0.5, y + 0.5);
}

double distance_to_segment(double px, double py, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = a.x + t * dx - px;
  const double cy = a.y + t * dy - py;
  return std::sqrt(cx * cx + cy * cy);
}

bool in_triangle(double px, double py, Point a, Point b, Point c) {
  auto cross = [](Point p, Point q, double x, double y) { return (q.x - p.x) * (y - p.y) - (q.y - p.y) * (x - p.x); };
  const double d1 = cross(a, b, px, py);
  const double d2 = cross(b, c, px, py);
  const double d3 = cross(c, a, px, py);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

void finish(ElementRaster& r) {
  std::sort(r.pixels.begin(), r.pixels.end(),
            [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  r.pixels.erase(std::unique(r.pixels.begin(), r.pixels.end()), r.pixels.end());
  for (const auto& [x, y] : r.pixels) r.bounds.extend(x, y);
}

void paint(Image& img, const ElementRaster& r, Rgb color) {
  for (const auto& [x, y] : r.pixels) img.set(x, y, color);
}

}  // namespace

void check(const RenderStyle& style) {
  if (style.width <= 0 || style.height <= 0) throw InvalidConfig("image size must be positive");
  if (style.node_radius <= 0 || style.edge_width <= 0) throw InvalidConfig("node radius and edge width must be positive");
  if (style.arrow_length < 0 || style.arrow_half_width < 0) throw InvalidConfig("arrowhead size must be non-negative");
}

ElementRaster rasterize_node(Point c, const RenderStyle& style) {
  ElementRaster out;
  const double r = style.node_radius;
  const double r2 = r * r;
  for_pixels_in(Bounds{c.x - r, c.y - r, c.x + r, c.y + r}, style, [&](int x, int y, double px, double py) {
    const double dx = px - c.x;
    const double dy = py - c.y;
    if (dx * dx + dy * dy <= r2) out.pixels.emplace_back(x, y);
  });
  finish(out);
  return out;
}

ElementRaster rasterize_edge(Point s, Point t, const RenderStyle& style) {
  ElementRaster out;
  const double dx = t.x - s.x;
  const double dy = t.y - s.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return out;
  const double ux = dx / len;
  const double uy = dy / len;
  const double r = style.node_radius;

  // Shaft between the node boundaries, clamped when the nodes overlap.
  const double start = std::min(r, len / 2);
  const Point a{s.x + ux * start, s.y + uy * start};
  const Point tip{t.x - ux * start, t.y - uy * start};
  const double half = style.edge_width / 2.0;
  for_pixels_in(Bounds{std::min(a.x, tip.x) - half, std::min(a.y, tip.y) - half, std::max(a.x, tip.x) + half,
                       std::max(a.y, tip.y) + half},
                style, [&](int x, int y, double px, double py) {
                  if (distance_to_segment(px, py, a, tip) <= half) out.pixels.emplace_back(x, y);
                });

  const double shaft = std::hypot(tip.x - a.x, tip.y - a.y);
  const double head = std::min(style.arrow_length, shaft);
  if (head > 0.0 && style.arrow_half_width > 0.0) {
    const Point base{tip.x - ux * head, tip.y - uy * head};
    const Point left{base.x - uy * style.arrow_half_width, base.y + ux * style.arrow_half_width};
    const Point right{base.x + uy * style.arrow_half_width, base.y - ux * style.arrow_half_width};
    const Bounds b{std::min({tip.x, left.x, right.x}), std::min({tip.y, left.y, right.y}),
                   std::max({tip.x, left.x, right.x}), std::max({tip.y, left.y, right.y})};
    for_pixels_in(b, style, [&](int x, int y, double px, double py) {
      if (in_triangle(px, py, tip, left, right)) out.pixels.emplace_back(x, y);
    });
  }
  finish(out);
  return out;
}

ElementRaster rasterize_element(const Dag& g, const Element& el, const RenderStyle& style) {
  if (const auto* id = std::get_if<NodeId>(&el)) {
    if (!g.has_node(*id)) throw UnknownElement("node " + to_string(*id) + " not in graph");
    return rasterize_node(g.at(*id), style);
  }
  const Edge& e = std::get<Edge>(el);
  if (!g.has_edge(e)) throw UnknownElement("edge " + to_string(e) + " not in graph");
  return rasterize_edge(g.at(e.source), g.at(e.target), style);
}

Image render_graph(const Dag& g, const RenderStyle& style) {
  return render_diff(DagPair{g, g, 0}, DiffSet{}, style);
}

Image render_diff(const DagPair& pair, const DiffSet& diff, const RenderStyle& style) {
  check(style);
  const Dag& g = pair.alternative;
  for (NodeId n : diff.nodes)
    if (!g.has_node(n)) throw UnknownElement("diff node " + to_string(n) + " not in alternative graph");
  for (const Edge& e : diff.edges)
    if (!g.has_edge(e)) throw UnknownElement("diff edge " + to_string(e) + " not in alternative graph");

  Image img(style.width, style.height, style.background);
  for (const Edge& e : g.edges())
    paint(img, rasterize_edge(g.at(e.source), g.at(e.target), style),
          diff.edges.count(e) ? style.diff_color : style.element_color);
  for (const auto& n : g.node_entries())
    paint(img, rasterize_node(g.at(n.id), style), diff.nodes.count(n.id) ? style.diff_color : style.element_color);
  return img;
}

BitImage diff_mask(const Dag& g, const DiffSet& diff, const RenderStyle& style) {
  BitImage mask(style.width, style.height);
  auto add = [&](const ElementRaster& r) {
    for (const auto& [x, y] : r.pixels) mask.set(x, y);
  };
  for (NodeId n : diff.nodes) add(rasterize_element(g, n, style));
  for (const Edge& e : diff.edges) add(rasterize_element(g, e, style));
  return mask;
}

}  // namespace dagdiff
