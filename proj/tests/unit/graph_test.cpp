#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dagdiff/graph.hpp"
#include "dagdiff/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dagdiff;
using fixture::graph;
using fixture::topology;

namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

// Cycle detection by three-color DFS.
bool dfs_has_cycle(const Dag& g) {
  std::map<NodeId, int> color;
  std::function<bool(NodeId)> visit = [&](NodeId n) {
    color[n] = 1;
    for (NodeId s : g.successors(n)) {
      if (color[s] == 1) return true;
      if (color[s] == 0 && visit(s)) return true;
    }
    color[n] = 2;
    return false;
  };
  for (NodeId n : g.nodes())
    if (color[n] == 0 && visit(n)) return true;
  return false;
}

}  // namespace

TEST(Density, Quotients) {
  Dag a = topology(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}});
  EXPECT_DOUBLE_EQ(linear_density(a), 0.8);
  Dag b = topology(6, {});
  for (int s = 1; s <= 6; ++s)
    for (int t = s + 1; t <= 6 && b.edge_count() < 12; ++t) b.add_edge(NodeId{s}, NodeId{t});
  ASSERT_EQ(b.edge_count(), 12u);
  EXPECT_DOUBLE_EQ(linear_density(b), 2.0);
  EXPECT_DOUBLE_EQ(linear_density(topology(1, {})), 0.0);
}

TEST(Density, ClassBoundaries) {
  EXPECT_EQ(classify_density(0.0), DensityClass::TreeLike);
  EXPECT_EQ(classify_density(1.0), DensityClass::TreeLike);
  EXPECT_EQ(classify_density(1.0001), DensityClass::Sparse);
  EXPECT_EQ(classify_density(2.0), DensityClass::Sparse);
  EXPECT_FALSE(classify_density(2.01).has_value());
  EXPECT_EQ(parse_density_class("tree"), DensityClass::TreeLike);
  EXPECT_EQ(parse_density_class("sparse"), DensityClass::Sparse);
  EXPECT_FALSE(parse_density_class("dense").has_value());
}

TEST(Density, MonotoneUnderEdgeAddition) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 12);
    Dag g = oracle::random_dag(rng, n, n - 1);
    double prev = linear_density(g);
    for (int s = 1; s <= n; ++s)
      for (int t = 1; t <= n; ++t) {
        if (s == t || g.has_edge({NodeId{s}, NodeId{t}}) || !rng.bernoulli(0.2)) continue;
        g.add_edge(NodeId{s}, NodeId{t});
        const double d = linear_density(g);
        EXPECT_GE(d, prev);
        prev = d;
      }
  }
}

TEST(Layers, GroupsEqualY) {
  Dag g = graph({{1, 50, 0}, {2, 10, 100}, {3, 90, 100}}, {{1, 2}, {1, 3}});
  const Layering l = depth_and_layers(g);
  EXPECT_EQ(l.depth, 2);
  ASSERT_EQ(l.layers.size(), 2u);
  EXPECT_EQ(l.layers.at(0), std::vector<NodeId>{NodeId{1}});
  EXPECT_EQ(l.layers.at(1), (std::vector<NodeId>{NodeId{2}, NodeId{3}}));
}

TEST(Layers, ChainOfFive) {
  Dag g = graph({{1, 0, 0}, {2, 0, 100}, {3, 0, 200}, {4, 0, 300}, {5, 0, 400}}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_EQ(depth_and_layers(g).depth, 5);
}

TEST(Layers, DepthIsDistinctYCountAndLayersPartition) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Dag g = oracle::random_dag(rng, 12, 14);
    std::set<double> ys;
    for (NodeId n : g.nodes()) {
      const double y = 100.0 * rng.uniform_int(0, 6);
      g.set_position(n, Point{g.at(n).x, y});
      ys.insert(y);
    }
    const Layering l = depth_and_layers(g);
    EXPECT_EQ(l.depth, static_cast<int>(ys.size()));
    std::multiset<NodeId> seen;
    for (const auto& [idx, members] : l.layers) seen.insert(members.begin(), members.end());
    EXPECT_EQ(seen.size(), g.node_count());
    EXPECT_EQ(std::set<NodeId>(seen.begin(), seen.end()).size(), g.node_count());
  }
}

TEST(Layers, NeedsPositions) { EXPECT_THROW(depth_and_layers(topology(2, {{1, 2}})), UnlaidOut); }

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(topology(6, {{1, 2}, {1, 3}, {2, 4}, {3, 5}, {3, 6}})).empty());
  EXPECT_TRUE(has_kind(validate(topology(2, {{1, 2}, {2, 1}})), Violation::Kind::Cycle));
  EXPECT_TRUE(has_kind(validate(topology(4, {{1, 2}, {3, 4}})), Violation::Kind::Disconnected));
  EXPECT_TRUE(has_kind(validate(topology(2, {{1, 1}, {1, 2}})), Violation::Kind::SelfLoop));
}

TEST(Validate, LabelGapAndDuplicates) {
  Dag g;
  g.add_node(NodeId{1});
  g.add_node(NodeId{3});
  g.add_edge(NodeId{1}, NodeId{3});
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::LabelGap));
  EXPECT_THROW(g.add_node(NodeId{1}), std::invalid_argument);
  EXPECT_THROW(g.add_node(NodeId{0}), std::invalid_argument);
}

TEST(Validate, TopologicalOrderIffNoCycle) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = rng.uniform_int(1, 9);
    Dag g = topology(n, {});
    const int m = rng.uniform_int(0, 2 * n);
    for (int i = 0; i < m; ++i) {
      const Edge e{NodeId{rng.uniform_int(1, n)}, NodeId{rng.uniform_int(1, n)}};
      if (e.source != e.target && !g.has_edge(e)) g.add_edge(e);
    }
    const bool cyclic = dfs_has_cycle(g);
    EXPECT_EQ(topological_order(g).has_value(), !cyclic);
    EXPECT_EQ(has_kind(validate(g), Violation::Kind::Cycle), cyclic);
  }
}

TEST(Validate, PairLaws) {
  Dag g1 = graph({{1, 100, 100}, {2, 100, 200}}, {{1, 2}});
  Dag g2 = graph({{1, 100, 100}, {2, 100, 200}, {3, 200, 200}}, {{1, 2}, {1, 3}});
  EXPECT_TRUE(validate_pair({g1, g2, 0}).empty());
  EXPECT_EQ(added_element_count({g1, g2, 0}), 2);

  Dag moved = g2;
  moved.set_position(NodeId{2}, Point{101, 200});
  const auto v = validate_pair({g1, moved, 0});
  EXPECT_TRUE(has_kind(v, Violation::Kind::PositionMismatch));

  EXPECT_TRUE(has_kind(validate_pair({g2, g1, 0}), Violation::Kind::NotSubgraph));
  EXPECT_TRUE(has_kind(validate_pair({g1, g1, 0}), Violation::Kind::ChangeCount));
  const PairLimits sparse{1, 8, DensityClass::Sparse};
  EXPECT_TRUE(has_kind(validate_pair({g1, g2, 0}, sparse), Violation::Kind::DensityClass));
}
