#include "dagdiff/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point p, Point a, Point b, double eps) {
  if (std::abs(cross(a, b, p)) > eps * std::max(1.0, std::hypot(b.x - a.x, b.y - a.y))) return false;
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps && p.y >= std::min(a.y, b.y) - eps &&
         p.y <= std::max(a.y, b.y) + eps;
}

int sign(double v) { return (v > 0) - (v < 0); }

// Closed-segment intersection, including touching and collinear overlap.
bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = sign(cross(a, b, c));
  const int o2 = sign(cross(a, b, d));
  const int o3 = sign(cross(c, d, a));
  const int o4 = sign(cross(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b, 0.0)) return true;
  if (o2 == 0 && on_segment(d, a, b, 0.0)) return true;
  if (o3 == 0 && on_segment(a, c, d, 0.0)) return true;
  if (o4 == 0 && on_segment(b, c, d, 0.0)) return true;
  return false;
}

std::vector<Point> unique_points(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Counter-clockwise angle from direction `from` to direction `to`, in [0, 2pi).
double ccw_angle(double from, double to) {
  double a = to - from;
  while (a < 0) a += 2 * std::numbers::pi;
  while (a >= 2 * std::numbers::pi) a -= 2 * std::numbers::pi;
  return a;
}

std::optional<Polygon> knn_hull_attempt(const std::vector<Point>& pts, int k) {
  const std::size_t n = pts.size();
  std::vector<bool> used(n, false);

  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (pts[i].y < pts[first].y || (pts[i].y == pts[first].y && pts[i].x > pts[first].x)) first = i;

  std::vector<std::size_t> hull{first};
  used[first] = true;
  std::size_t current = first;
  double back_angle = 0.0;  // direction from the current point back to the previous one
  int step = 2;

  while ((current != first || step == 2) && hull.size() <= n) {
    if (step == 5) used[first] = false;

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i]) candidates.push_back(i);
    if (candidates.empty()) break;
    const Point c = pts[current];
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      const double da = std::hypot(pts[a].x - c.x, pts[a].y - c.y);
      const double db = std::hypot(pts[b].x - c.x, pts[b].y - c.y);
      return da != db ? da < db : a < b;
    });
    if (candidates.size() > static_cast<std::size_t>(k)) candidates.resize(static_cast<std::size_t>(k));

    // Largest counter-clockwise sweep from the back direction first.
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      const double aa = ccw_angle(back_angle, std::atan2(pts[a].y - c.y, pts[a].x - c.x));
      const double ab = ccw_angle(back_angle, std::atan2(pts[b].y - c.y, pts[b].x - c.x));
      return aa != ab ? aa > ab : a < b;
    });

    std::optional<std::size_t> chosen;
    for (std::size_t cand : candidates) {
      const bool closing = cand == first;
      bool crosses = false;
      // Skip the edge ending at the current point, and the first edge when closing.
      const std::size_t edges = hull.size() >= 2 ? hull.size() - 2 : 0;
      for (std::size_t j = closing ? 1 : 0; j < edges && !crosses; ++j)
        crosses = segments_intersect(c, pts[cand], pts[hull[j]], pts[hull[j + 1]]);
      if (!crosses) {
        chosen = cand;
        break;
      }
    }
    if (!chosen) return std::nullopt;

    current = *chosen;
    if (current == first) break;
    hull.push_back(current);
    used[current] = true;
    back_angle = std::atan2(pts[hull[hull.size() - 2]].y - pts[current].y, pts[hull[hull.size() - 2]].x - pts[current].x);
    ++step;
  }
  if (current != first) return std::nullopt;

  Polygon poly;
  for (std::size_t i : hull) poly.push_back(pts[i]);
  for (const Point& p : pts)
    if (!point_in_polygon(p, poly, 1e-7)) return std::nullopt;
  return poly;
}

}  // namespace

bool degenerate_point_set(const std::vector<Point>& pts) {
  const auto u = unique_points(pts);
  if (u.size() < 3) return true;
  for (std::size_t i = 2; i < u.size(); ++i)
    if (cross(u[0], u[1], u[i]) != 0.0) return false;
  return true;
}

Polygon convex_hull(std::vector<Point> pts) {
  pts = unique_points(std::move(pts));
  if (degenerate_point_set(pts)) throw DegenerateHull("fewer than three non-collinear points");
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon concave_hull(const std::vector<Point>& input, int k) {
  const auto pts = unique_points(input);
  if (degenerate_point_set(pts)) throw DegenerateHull("fewer than three non-collinear points");
  if (pts.size() == 3) return pts;
  for (int kk = std::max(k, 3); kk < static_cast<int>(pts.size()); ++kk)
    if (auto poly = knn_hull_attempt(pts, kk)) return *poly;
  return convex_hull(pts);
}

double polygon_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

bool point_in_polygon(Point p, const Polygon& poly, double eps) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(p, poly[i], poly[(i + 1) % n], eps)) return true;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

BitImage rasterize_polygon(const Polygon& poly, int width, int height) {
  BitImage out(width, height);
  const std::size_t n = poly.size();
  if (n < 3) return out;
  std::vector<double> xs;
  for (int y = 0; y < height; ++y) {
    const double yc = y + 0.5;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = poly[i];
      const Point& b = poly[j];
      if ((a.y > yc) != (b.y > yc)) xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      const int x0 = std::max(0, static_cast<int>(std::ceil(xs[i] - 0.5)));
      const int x1 = std::min(width - 1, static_cast<int>(std::floor(xs[i + 1] - 0.5)));
      for (int x = x0; x <= x1; ++x) out.set(x, y);
    }
  }
  return out;
}

std::vector<Point> node_positions(const Dag& g) {
  std::vector<Point> pts;
  pts.reserve(g.node_count());
  for (const auto& n : g.node_entries()) pts.push_back(g.at(n.id));
  return pts;
}

}  // namespace dagdiff
