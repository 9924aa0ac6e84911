#include "dagdiff/differ.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "dagdiff/errors.hpp"

namespace dagdiff {

DiffSet gt_diff(const DagPair& pair) {
  DiffSet d;
  d.kind = DiffKind::GT;
  for (const auto& n : pair.alternative.node_entries())
    if (!pair.base.has_node(n.id)) d.nodes.insert(n.id);
  for (const Edge& e : pair.alternative.edges())
    if (!pair.base.has_edge(e)) d.edges.insert(e);
  return d;
}

DiffSet random_gt(const DiffSet& gt, Rng& rng, int max_draw) {
  if (gt.empty()) throw EmptyGT("random(GT) needs at least one GT element");
  const int n_draw = rng.uniform_int(1, max_draw);
  const int e_draw = rng.uniform_int(1, max_draw);
  const auto n_take = std::min<std::size_t>(static_cast<std::size_t>(n_draw), gt.nodes.size());
  const auto e_take = std::min<std::size_t>(static_cast<std::size_t>(e_draw), gt.edges.size());

  DiffSet out;
  out.kind = DiffKind::RandomGT;
  for (NodeId n : rng.sample(std::vector<NodeId>(gt.nodes.begin(), gt.nodes.end()), n_take)) out.nodes.insert(n);
  for (const Edge& e : rng.sample(std::vector<Edge>(gt.edges.begin(), gt.edges.end()), e_take)) out.edges.insert(e);
  return out;
}

bool element_in_box(const ElementRaster& raster, const Box& box, int width, int height) {
  const PixelBox p = box.pixels(width, height);
  if (p.empty() || raster.empty()) return false;
  const PixelBox& r = raster.bounds;
  if (r.x1 < p.x0 || r.x0 > p.x1 || r.y1 < p.y0 || r.y0 > p.y1) return false;
  return std::any_of(raster.pixels.begin(), raster.pixels.end(),
                     [&](const auto& px) { return px.first >= p.x0 && px.first <= p.x1 && px.second >= p.y0 && px.second <= p.y1; });
}

bool element_in_box(const Dag& g, const Element& el, const Box& box, const RenderStyle& style) {
  return element_in_box(rasterize_element(g, el, style), box, style.width, style.height);
}

DiffSet dfs_select(const DiffSet& gt, const std::vector<RoiBox>& rois, const DagPair& pair, const RenderStyle& style) {
  DiffSet out;
  out.kind = DiffKind::HumanLike;
  auto hit = [&](const ElementRaster& r, bool supportive) {
    return std::any_of(rois.begin(), rois.end(), [&](const RoiBox& roi) {
      return roi.is_supportive == supportive && element_in_box(r, roi.box, style.width, style.height);
    });
  };
  for (NodeId n : gt.nodes) {
    const ElementRaster r = rasterize_element(pair.alternative, n, style);
    if (hit(r, true) && !hit(r, false)) out.nodes.insert(n);
  }
  for (const Edge& e : gt.edges) {
    const ElementRaster r = rasterize_element(pair.alternative, e, style);
    if (hit(r, true) && !hit(r, false)) out.edges.insert(e);
  }
  return out;
}

std::vector<StatsRow> diff_stats(const std::vector<std::pair<DiffSet, DiffSet>>& batch) {
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  // key: (kind order, x)
  std::map<std::pair<int, int>, Acc> acc;
  auto add = [&](int kind, std::size_t x, std::size_t other) {
    Acc& a = acc[{kind, static_cast<int>(x)}];
    a.sum += static_cast<double>(other);
    ++a.n;
  };
  for (const auto& [gt, hl] : batch) {
    add(0, gt.nodes.size(), gt.edges.size());
    add(1, gt.nodes.size(), hl.edges.size());
    add(2, gt.edges.size(), gt.nodes.size());
    add(3, gt.edges.size(), hl.nodes.size());
  }
  static constexpr const char* kKinds[] = {"gt_edges_per_node", "human_like_edges_per_node", "gt_nodes_per_edge",
                                           "human_like_nodes_per_edge"};
  std::vector<StatsRow> rows;
  for (const auto& [key, a] : acc) rows.push_back({key.second, kKinds[key.first], a.sum / static_cast<double>(a.n), a.n});
  return rows;
}

std::string stats_csv(const std::vector<StatsRow>& rows) {
  std::string out = "x_count,kind,mean_other_count,n\n";
  char buf[64];
  for (const StatsRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.mean_other_count);
    out += std::to_string(r.x_count) + "," + r.kind + "," + buf + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

}  // namespace dagdiff
