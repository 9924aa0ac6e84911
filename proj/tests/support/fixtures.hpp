#pragma once

#include <initializer_list>
#include <tuple>
#include <utility>

#include "dagdiff/graph.hpp"

namespace fixture {

using namespace dagdiff;

/// Graph from (label, x, y) nodes and (source, target) edges.
inline Dag graph(std::initializer_list<std::tuple<int, double, double>> nodes,
                 std::initializer_list<std::pair<int, int>> edges) {
  Dag g;
  for (const auto& [id, x, y] : nodes) g.add_node(NodeId{id}, Point{x, y});
  for (const auto& [s, t] : edges) g.add_edge(NodeId{s}, NodeId{t});
  return g;
}

/// Unpositioned graph on nodes 1..n.
inline Dag topology(int n, std::initializer_list<std::pair<int, int>> edges) {
  Dag g;
  for (int i = 1; i <= n; ++i) g.add_node(NodeId{i});
  for (const auto& [s, t] : edges) g.add_edge(NodeId{s}, NodeId{t});
  return g;
}

}  // namespace fixture
