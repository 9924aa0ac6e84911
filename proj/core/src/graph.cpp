#include "dagdiff/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

#include "dagdiff/errors.hpp"

namespace dagdiff {

std::string to_string(NodeId id) { return std::to_string(id.value); }

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.source.value) + "," + std::to_string(e.target.value) + ")";
}

std::vector<Dag::Node>::const_iterator Dag::find(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, NodeId v) { return n.id < v; });
  if (it != nodes_.end() && it->id == id) return it;
  return nodes_.end();
}

void Dag::add_node(NodeId id, std::optional<Point> position) {
  if (id.value < 1) throw std::invalid_argument("node label must be >= 1, got " + to_string(id));
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, NodeId v) { return n.id < v; });
  if (it != nodes_.end() && it->id == id)
    throw std::invalid_argument("duplicate node label " + to_string(id));
  nodes_.insert(it, Node{id, position});
}

void Dag::add_edge(NodeId source, NodeId target) {
  Edge e{source, target};
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
}

void Dag::set_position(NodeId id, Point p) {
  auto it = find(id);
  if (it == nodes_.end()) throw std::invalid_argument("no node " + to_string(id));
  nodes_[static_cast<std::size_t>(it - nodes_.begin())].position = p;
}

void Dag::clear_positions() {
  for (auto& n : nodes_) n.position.reset();
}

bool Dag::has_node(NodeId id) const { return find(id) != nodes_.end(); }

bool Dag::has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::optional<Point> Dag::position(NodeId id) const {
  auto it = find(id);
  if (it == nodes_.end()) return std::nullopt;
  return it->position;
}

Point Dag::at(NodeId id) const {
  auto it = find(id);
  if (it == nodes_.end()) throw std::invalid_argument("no node " + to_string(id));
  if (!it->position) throw UnlaidOut("node " + to_string(id) + " has no position");
  return *it->position;
}

bool Dag::laid_out() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.position.has_value(); });
}

std::vector<NodeId> Dag::nodes() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.id);
  return out;
}

std::vector<NodeId> Dag::successors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& e : edges_)
    if (e.source == id) out.push_back(e.target);
  return out;
}

std::vector<NodeId> Dag::predecessors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& e : edges_)
    if (e.target == id) out.push_back(e.source);
  return out;
}

std::string_view to_string(DensityClass c) {
  switch (c) {
    case DensityClass::TreeLike: return "tree";
    case DensityClass::Sparse: return "sparse";
  }
  return "?";
}

std::optional<DensityClass> parse_density_class(std::string_view s) {
  if (s == "tree" || s == "tree-like" || s == "treelike" || s == "TreeLike") return DensityClass::TreeLike;
  if (s == "sparse" || s == "Sparse") return DensityClass::Sparse;
  return std::nullopt;
}

double linear_density(const Dag& g) {
  if (g.node_count() == 0) throw std::invalid_argument("linear density of an empty graph");
  return static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

std::optional<DensityClass> classify_density(double d) {
  if (d >= 0.0 && d <= 1.0) return DensityClass::TreeLike;
  if (d > 1.0 && d <= 2.0) return DensityClass::Sparse;
  return std::nullopt;
}

bool in_density_class(double d, DensityClass c) { return classify_density(d) == c; }

int Layering::layer_of(double y) const {
  for (std::size_t i = 0; i < layer_y.size(); ++i)
    if (std::abs(y - layer_y[i]) <= kLayerTolerance) return static_cast<int>(i);
  return -1;
}

Layering depth_and_layers(const Dag& g) {
  std::vector<std::pair<double, NodeId>> ys;
  ys.reserve(g.node_count());
  for (const auto& n : g.node_entries()) {
    if (!n.position) throw UnlaidOut("node " + to_string(n.id) + " has no position");
    ys.emplace_back(n.position->y, n.id);
  }
  std::sort(ys.begin(), ys.end());

  Layering out;
  double group_start = 0.0;
  for (const auto& [y, id] : ys) {
    if (out.layer_y.empty() || y - group_start > kLayerTolerance) {
      group_start = y;
      out.layer_y.push_back(y);
    }
    out.layers[static_cast<int>(out.layer_y.size()) - 1].push_back(id);
  }
  for (auto& [_, members] : out.layers) std::sort(members.begin(), members.end());
  out.depth = static_cast<int>(out.layer_y.size());
  return out;
}

std::optional<std::vector<NodeId>> topological_order(const Dag& g) {
  std::map<NodeId, int> indegree;
  for (const auto& n : g.node_entries()) indegree[n.id] = 0;
  for (const auto& e : g.edges()) {
    if (indegree.count(e.source) == 0 || indegree.count(e.target) == 0) continue;
    ++indegree[e.target];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree)
    if (deg == 0) ready.push(id);

  std::vector<NodeId> order;
  order.reserve(g.node_count());
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& e : g.edges()) {
      if (e.source != v || indegree.count(e.target) == 0) continue;
      if (--indegree[e.target] == 0) ready.push(e.target);
    }
  }
  if (order.size() != g.node_count()) return std::nullopt;
  return order;
}

bool weakly_connected(const Dag& g) {
  if (g.node_count() <= 1) return true;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& e : g.edges()) {
    if (!g.has_node(e.source) || !g.has_node(e.target)) continue;
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::set<NodeId> seen;
  std::vector<NodeId> stack{g.node_entries().front().id};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (NodeId w : adj[v])
      if (!seen.count(w)) stack.push_back(w);
  }
  return seen.size() == g.node_count();
}

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Cycle: return "cycle";
    case Violation::Kind::Disconnected: return "disconnected";
    case Violation::Kind::SelfLoop: return "self-loop";
    case Violation::Kind::DuplicateEdge: return "duplicate-edge";
    case Violation::Kind::DanglingEdge: return "dangling-edge";
    case Violation::Kind::LabelGap: return "label-gap";
    case Violation::Kind::TooManyNodes: return "too-many-nodes";
    case Violation::Kind::NotSubgraph: return "not-subgraph";
    case Violation::Kind::ChangeCount: return "change-count";
    case Violation::Kind::PositionMismatch: return "position-mismatch";
    case Violation::Kind::DensityClass: return "density-class";
  }
  return "?";
}

std::vector<Violation> validate(const Dag& g) {
  using K = Violation::Kind;
  std::vector<Violation> out;

  if (g.node_count() > kMaxNodes)
    out.push_back({K::TooManyNodes, std::to_string(g.node_count()) + " nodes"});

  const auto& nodes = g.node_entries();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.value != static_cast<int>(i) + 1) {
      out.push_back({K::LabelGap, "expected label " + std::to_string(i + 1) + ", found " + to_string(nodes[i].id)});
      break;
    }
  }

  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.source == e.target) out.push_back({K::SelfLoop, to_string(e)});
    if (!g.has_node(e.source) || !g.has_node(e.target)) out.push_back({K::DanglingEdge, to_string(e)});
    if (i > 0 && edges[i - 1] == e) out.push_back({K::DuplicateEdge, to_string(e)});
  }

  if (!topological_order(g)) out.push_back({K::Cycle, "directed cycle present"});
  if (!weakly_connected(g)) out.push_back({K::Disconnected, "graph has more than one component"});
  return out;
}

int added_element_count(const DagPair& pair) {
  int count = 0;
  for (const auto& n : pair.alternative.node_entries())
    if (!pair.base.has_node(n.id)) ++count;
  for (const auto& e : pair.alternative.edges())
    if (!pair.base.has_edge(e)) ++count;
  return count;
}

std::vector<Violation> validate_pair(const DagPair& pair, const PairLimits& limits) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  for (auto v : validate(pair.base)) {
    v.detail = "base: " + v.detail;
    out.push_back(std::move(v));
  }
  for (auto v : validate(pair.alternative)) {
    v.detail = "alternative: " + v.detail;
    out.push_back(std::move(v));
  }

  for (const auto& n : pair.base.node_entries()) {
    if (!pair.alternative.has_node(n.id)) {
      out.push_back({K::NotSubgraph, "node " + to_string(n.id) + " missing from alternative"});
      continue;
    }
    if (n.position != pair.alternative.position(n.id))
      out.push_back({K::PositionMismatch, "node " + to_string(n.id)});
  }
  for (const auto& e : pair.base.edges())
    if (!pair.alternative.has_edge(e)) out.push_back({K::NotSubgraph, "edge " + to_string(e) + " missing from alternative"});

  const int changes = added_element_count(pair);
  if (changes < limits.changes_min || changes > limits.changes_max)
    out.push_back({K::ChangeCount, std::to_string(changes) + " added elements"});

  if (limits.density_class) {
    for (const Dag* g : {&pair.base, &pair.alternative}) {
      if (g->node_count() == 0) continue;
      const double d = linear_density(*g);
      if (!in_density_class(d, *limits.density_class))
        out.push_back({K::DensityClass, (g == &pair.base ? "base" : "alternative") + std::string(" density ") +
                                            std::to_string(d) + " outside " +
                                            std::string(to_string(*limits.density_class))});
    }
  }
  return out;
}

}  // namespace dagdiff
