#pragma once

#include <utility>
#include <vector>

#include "dagdiff/diffset.hpp"
#include "dagdiff/graph.hpp"
#include "dagdiff/image.hpp"

namespace dagdiff {

/// Node-link drawing style. Geometry is hard-edged: a pixel belongs to a
/// shape when its center (x + 0.5, y + 0.5) lies inside it.
struct RenderStyle {
  int width = 800;
  int height = 800;
  double node_radius = 10.0;
  double edge_width = 2.0;
  double arrow_length = 8.0;
  double arrow_half_width = 4.0;
  Rgb element_color = kBlack;
  Rgb diff_color = kBlue;
  Rgb background = kWhite;
};

void check(const RenderStyle& style);

/// Pixels covered by one drawn element, sorted by (y, x).
struct ElementRaster {
  std::vector<std::pair<int, int>> pixels;
  PixelBox bounds;

  [[nodiscard]] bool empty() const { return pixels.empty(); }
};

/// Filled disc of the node.
ElementRaster rasterize_node(Point center, const RenderStyle& style);
/// Straight shaft between the node boundaries plus a triangular arrowhead
/// whose tip touches the target boundary.
ElementRaster rasterize_edge(Point source, Point target, const RenderStyle& style);
/// Element geometry inside graph g. Throws UnknownElement if absent.
ElementRaster rasterize_element(const Dag& g, const Element& el, const RenderStyle& style);

/// Edges first, nodes drawn over them.
Image render_graph(const Dag& g, const RenderStyle& style);

/// The alternative graph with diff elements in the diff color.
/// Throws UnknownElement when the diff names an element absent from G2.
Image render_diff(const DagPair& pair, const DiffSet& diff, const RenderStyle& style);

/// Union of the element rasters of a diff, as a binary mask.
BitImage diff_mask(const Dag& g, const DiffSet& diff, const RenderStyle& style);

}  // namespace dagdiff
