#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dagdiff {

/// Node label. Labels are unique within a graph and form the range 1..|V|.
struct NodeId {
  int value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Position in image pixel coordinates: origin top-left, y grows downward.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(Point, Point) = default;
};

struct Edge {
  NodeId source;
  NodeId target;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(NodeId id);
std::string to_string(const Edge& e);

/// Small directed graph with optional node positions.
///
/// Nodes and edges are kept sorted so that two graphs holding the same
/// elements compare equal and iterate in the same order. Structural
/// invariants (acyclicity, connectivity, no duplicates) are not enforced on
/// insertion; `validate` reports them.
class Dag {
 public:
  struct Node {
    NodeId id;
    std::optional<Point> position;

    friend bool operator==(const Node&, const Node&) = default;
  };

  Dag() = default;

  /// Throws std::invalid_argument when the label is taken or not positive.
  void add_node(NodeId id, std::optional<Point> position = std::nullopt);
  void add_edge(NodeId source, NodeId target);
  void add_edge(const Edge& e) { add_edge(e.source, e.target); }

  void set_position(NodeId id, Point p);
  void clear_positions();

  [[nodiscard]] bool has_node(NodeId id) const;
  [[nodiscard]] bool has_edge(const Edge& e) const;
  [[nodiscard]] std::optional<Point> position(NodeId id) const;
  /// Position of a node; throws UnlaidOut when unset.
  [[nodiscard]] Point at(NodeId id) const;
  [[nodiscard]] bool laid_out() const;

  [[nodiscard]] const std::vector<Node>& node_entries() const { return nodes_; }
  [[nodiscard]] std::vector<NodeId> nodes() const;
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] int max_label() const { return nodes_.empty() ? 0 : nodes_.back().id.value; }

  [[nodiscard]] std::vector<NodeId> successors(NodeId id) const;
  [[nodiscard]] std::vector<NodeId> predecessors(NodeId id) const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  [[nodiscard]] std::vector<Node>::const_iterator find(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

enum class DensityClass { TreeLike, Sparse };

std::string_view to_string(DensityClass c);
/// Accepts "tree", "tree-like", "treelike", "sparse".
std::optional<DensityClass> parse_density_class(std::string_view s);

/// |E| / |V|. Requires at least one node.
double linear_density(const Dag& g);

/// Tree-like covers [0, 1], sparse covers (1, 2]; anything denser has no class.
std::optional<DensityClass> classify_density(double d);
bool in_density_class(double d, DensityClass c);

/// Layers grouped by quantized y coordinate, top to bottom.
struct Layering {
  int depth = 0;
  std::map<int, std::vector<NodeId>> layers;
  /// Representative y of each layer (the first y value of its group).
  std::vector<double> layer_y;

  /// Layer index for y, or -1 when no layer lies within tolerance.
  [[nodiscard]] int layer_of(double y) const;
};

/// y values closer than this are treated as the same layer.
inline constexpr double kLayerTolerance = 0.5;

/// Throws UnlaidOut if any node has no position.
Layering depth_and_layers(const Dag& g);

/// Kahn order; nullopt when a directed cycle exists.
std::optional<std::vector<NodeId>> topological_order(const Dag& g);
bool weakly_connected(const Dag& g);

struct Violation {
  enum class Kind {
    Cycle,
    Disconnected,
    SelfLoop,
    DuplicateEdge,
    DanglingEdge,
    LabelGap,
    TooManyNodes,
    // pair-level
    NotSubgraph,
    ChangeCount,
    PositionMismatch,
    DensityClass,
  };
  Kind kind;
  std::string detail;
};

std::string_view to_string(Violation::Kind k);

/// Hard ceiling on graph size.
inline constexpr std::size_t kMaxNodes = 64;

/// Reports every broken Dag invariant. An empty result means the graph is valid.
std::vector<Violation> validate(const Dag& g);

/// Base graph G1, alternative G2 and the seed they were drawn from.
struct DagPair {
  Dag base;
  Dag alternative;
  std::uint64_t seed = 0;

  friend bool operator==(const DagPair&, const DagPair&) = default;
};

struct PairLimits {
  int changes_min = 1;
  int changes_max = 8;
  std::optional<DensityClass> density_class;
};

/// Number of elements in G2 that are not in G1.
int added_element_count(const DagPair& pair);

/// Both graphs' invariants plus the pair laws: G1 is a subgraph of G2, the
/// change count lies within limits, shared nodes sit at identical positions
/// and, when a class is given, both graphs belong to it.
std::vector<Violation> validate_pair(const DagPair& pair, const PairLimits& limits = {});

}  // namespace dagdiff
