#pragma once

#include <optional>
#include <vector>

#include "dagdiff/graph.hpp"

namespace dagdiff {

/// Layered top-rooted layout on a fixed canvas.
///
/// Layers sit `layer_gap` apart starting at the top margin; slots within a
/// layer are `node_gap` apart and centered on the canvas. Either gap shrinks
/// when the drawing would not fit, down to its minimum.
struct LayoutConfig {
  int canvas_width = 800;
  int canvas_height = 800;
  double margin = 40.0;
  double layer_gap = 150.0;
  double node_gap = 120.0;
  double min_layer_gap = 40.0;
  double min_node_gap = 28.0;
  int sweeps = 4;
};

/// Throws InvalidConfig.
void check(const LayoutConfig& cfg);

/// Lays out the union of both graphs and gives every shared node the same
/// position in G1 and G2. Existing positions are discarded.
/// Throws CanvasOverflow when the widest layer cannot fit at min_node_gap or
/// the layer count cannot fit at min_layer_gap.
DagPair layout_union(const DagPair& pair, const LayoutConfig& cfg);

/// Single-graph layout; the identity pair (G, G).
Dag layout_dag(const Dag& g, const LayoutConfig& cfg);

/// Longest path from any root; roots sit on layer 0. Requires an acyclic graph.
std::map<NodeId, int> longest_path_layers(const Dag& g);

struct Crossing {
  Point at;
  Edge first;
  Edge second;
};

/// Intersection point when the open segments cross at a single interior
/// point. Touching, shared endpoints and collinear overlap yield nullopt.
std::optional<Point> proper_intersection(Point a0, Point a1, Point b0, Point b1);

/// Every proper crossing between straight center-to-center edges. Edges that
/// share an endpoint never cross. Reported with first < second.
std::vector<Crossing> edge_crossings(const Dag& g);

}  // namespace dagdiff
