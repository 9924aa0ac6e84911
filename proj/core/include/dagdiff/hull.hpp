#pragma once

#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/image.hpp"

namespace dagdiff {

using Polygon = std::vector<Point>;

/// True when the points do not span a 2-D region (fewer than three distinct
/// points, or all of them collinear).
bool degenerate_point_set(const std::vector<Point>& pts);

/// Andrew's monotone chain; collinear boundary points are dropped.
/// Throws DegenerateHull for degenerate input.
Polygon convex_hull(std::vector<Point> pts);

/// k-nearest-neighbours concave hull. Starts at `k` neighbours and widens
/// the neighbourhood on failure; falls back to the convex hull once every
/// point is a neighbour. Throws DegenerateHull for degenerate input.
Polygon concave_hull(const std::vector<Point>& pts, int k = 3);

/// Shoelace area, always non-negative.
double polygon_area(const Polygon& poly);

/// Inside or on the boundary (within `eps`).
bool point_in_polygon(Point p, const Polygon& poly, double eps = 1e-9);

/// Pixels whose centers lie inside the polygon (even-odd rule).
BitImage rasterize_polygon(const Polygon& poly, int width, int height);

/// Node centers of a laid-out graph.
std::vector<Point> node_positions(const Dag& g);

}  // namespace dagdiff
