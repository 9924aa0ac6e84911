#include "dagdiff/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

// A slot in a layer: either a real node or a dummy standing in for a long
// edge as it passes through the layer.
struct Slot {
  NodeId node;       // real node, or the edge target for dummies
  NodeId source{};   // edge source for dummies
  bool dummy = false;
  std::vector<int> preds;  // indices into the previous layer
  double barycenter = 0.0;

  [[nodiscard]] auto tie_key() const { return std::tuple(node.value, dummy ? 1 : 0, source.value); }
};

Dag union_graph(const DagPair& pair) {
  Dag u;
  for (const auto& n : pair.alternative.node_entries()) u.add_node(n.id);
  for (const auto& n : pair.base.node_entries())
    if (!u.has_node(n.id)) u.add_node(n.id);
  for (const auto& e : pair.alternative.edges()) u.add_edge(e);
  for (const auto& e : pair.base.edges())
    if (!u.has_edge(e)) u.add_edge(e);
  return u;
}

}  // namespace

void check(const LayoutConfig& cfg) {
  if (cfg.canvas_width <= 0 || cfg.canvas_height <= 0) throw InvalidConfig("canvas must be positive");
  if (cfg.margin < 0 || 2 * cfg.margin >= std::min(cfg.canvas_width, cfg.canvas_height))
    throw InvalidConfig("margin does not leave a drawable area");
  if (cfg.layer_gap <= 0 || cfg.node_gap <= 0 || cfg.min_layer_gap <= 0 || cfg.min_node_gap <= 0)
    throw InvalidConfig("layout gaps must be positive");
  if (cfg.sweeps < 1) throw InvalidConfig("sweeps must be >= 1");
}

std::map<NodeId, int> longest_path_layers(const Dag& g) {
  const auto order = topological_order(g);
  if (!order) throw std::invalid_argument("cannot layer a cyclic graph");
  std::map<NodeId, int> layer;
  for (NodeId v : *order) layer[v] = 0;
  for (NodeId v : *order)
    for (NodeId w : g.successors(v)) layer[w] = std::max(layer[w], layer[v] + 1);
  return layer;
}

DagPair layout_union(const DagPair& pair, const LayoutConfig& cfg) {
  check(cfg);
  const Dag u = union_graph(pair);
  const auto layer_of = longest_path_layers(u);

  int depth = 0;
  for (const auto& [_, l] : layer_of) depth = std::max(depth, l + 1);

  std::vector<std::vector<Slot>> layers(static_cast<std::size_t>(std::max(depth, 1)));
  for (const auto& n : u.node_entries()) layers[static_cast<std::size_t>(layer_of.at(n.id))].push_back(Slot{n.id, {}, false, {}, 0.0});
  for (auto& layer : layers)
    std::sort(layer.begin(), layer.end(), [](const Slot& a, const Slot& b) { return a.tie_key() < b.tie_key(); });

  // Dummies for every intermediate layer of a long edge. The predecessor of a
  // slot is the real source or the dummy one layer up.
  auto index_of = [&](int l, NodeId node, NodeId source, bool dummy) {
    const auto& layer = layers[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < layer.size(); ++i)
      if (layer[i].node == node && layer[i].dummy == dummy && (!dummy || layer[i].source == source))
        return static_cast<int>(i);
    return -1;
  };
  for (const auto& e : u.edges()) {
    const int ls = layer_of.at(e.source);
    const int lt = layer_of.at(e.target);
    for (int l = ls + 1; l < lt; ++l) layers[static_cast<std::size_t>(l)].push_back(Slot{e.target, e.source, true, {}, 0.0});
  }

  // Barycenter sweeps from the top. Positions are centered slot offsets so
  // that layers of different widths align on the canvas axis.
  auto centered = [](int index, std::size_t count) { return index - (static_cast<double>(count) - 1.0) / 2.0; };
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (std::size_t l = 1; l < layers.size(); ++l) {
      auto& layer = layers[l];
      const auto& above = layers[l - 1];
      for (auto& slot : layer) {
        slot.preds.clear();
        if (slot.dummy) {
          const int up = layer_of.at(slot.source) == static_cast<int>(l) - 1
                             ? index_of(static_cast<int>(l) - 1, slot.source, {}, false)
                             : index_of(static_cast<int>(l) - 1, slot.node, slot.source, true);
          slot.preds.push_back(up);
        } else {
          for (NodeId p : u.predecessors(slot.node)) {
            const int lp = layer_of.at(p);
            slot.preds.push_back(lp == static_cast<int>(l) - 1 ? index_of(lp, p, {}, false)
                                                                : index_of(static_cast<int>(l) - 1, slot.node, p, true));
          }
        }
        double sum = 0.0;
        for (int p : slot.preds) sum += centered(p, above.size());
        slot.barycenter = slot.preds.empty() ? 0.0 : sum / static_cast<double>(slot.preds.size());
      }
      std::stable_sort(layer.begin(), layer.end(), [](const Slot& a, const Slot& b) {
        if (a.barycenter != b.barycenter) return a.barycenter < b.barycenter;
        return a.tie_key() < b.tie_key();
      });
    }
  }

  std::size_t widest = 1;
  for (const auto& layer : layers) widest = std::max(widest, layer.size());

  const double avail_w = cfg.canvas_width - 2.0 * cfg.margin;
  const double avail_h = cfg.canvas_height - 2.0 * cfg.margin;
  double node_gap = cfg.node_gap;
  if (widest > 1) {
    node_gap = std::min(node_gap, avail_w / static_cast<double>(widest - 1));
    if (node_gap < cfg.min_node_gap)
      throw CanvasOverflow("layer of " + std::to_string(widest) + " slots does not fit the canvas width");
  }
  double layer_gap = cfg.layer_gap;
  if (layers.size() > 1) {
    layer_gap = std::min(layer_gap, avail_h / static_cast<double>(layers.size() - 1));
    if (layer_gap < cfg.min_layer_gap)
      throw CanvasOverflow(std::to_string(layers.size()) + " layers do not fit the canvas height");
  }

  const double cx = cfg.canvas_width / 2.0;
  std::map<NodeId, Point> pos;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (layer[i].dummy) continue;
      pos[layer[i].node] = Point{cx + centered(static_cast<int>(i), layer.size()) * node_gap,
                                 cfg.margin + static_cast<double>(l) * layer_gap};
    }
  }

  DagPair out = pair;
  for (Dag* g : {&out.base, &out.alternative})
    for (NodeId id : g->nodes()) g->set_position(id, pos.at(id));
  return out;
}

Dag layout_dag(const Dag& g, const LayoutConfig& cfg) { return layout_union(DagPair{g, g, 0}, cfg).base; }

std::optional<Point> proper_intersection(Point a0, Point a1, Point b0, Point b1) {
  auto orient = [](Point p, Point q, Point r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
  const double o1 = orient(a0, a1, b0);
  const double o2 = orient(a0, a1, b1);
  const double o3 = orient(b0, b1, a0);
  const double o4 = orient(b0, b1, a1);
  const bool straddle_a = (o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0);
  const bool straddle_b = (o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0);
  if (!straddle_a || !straddle_b) return std::nullopt;
  const double t = o3 / (o3 - o4);
  return Point{a0.x + t * (a1.x - a0.x), a0.y + t * (a1.y - a0.y)};
}

std::vector<Crossing> edge_crossings(const Dag& g) {
  const auto& edges = g.edges();
  std::vector<std::pair<Point, Point>> seg;
  seg.reserve(edges.size());
  for (const auto& e : edges) seg.emplace_back(g.at(e.source), g.at(e.target));

  std::vector<Crossing> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = edges[i];
      const Edge& b = edges[j];
      if (a.source == b.source || a.source == b.target || a.target == b.source || a.target == b.target) continue;
      if (auto p = proper_intersection(seg[i].first, seg[i].second, seg[j].first, seg[j].second))
        out.push_back(Crossing{*p, a, b});
    }
  }
  return out;
}

}  // namespace dagdiff
