#include <gtest/gtest.h>

#include <algorithm>

#include "dagdiff/errors.hpp"
#include "dagdiff/generator.hpp"
#include "dagdiff/layout.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dagdiff;
using fixture::graph;
using fixture::topology;

namespace {

std::vector<DagPair> some_pairs(DensityClass c, int n) {
  GenConfig cfg;
  cfg.density_class = c;
  cfg.n_pairs = n;
  cfg.seed = 77;
  cfg.pool_size = 40;
  cfg.depth_band_samples = 40;
  return sample_dataset(cfg, LayoutConfig{});
}

}  // namespace

TEST(Layout, IdentityPairSharesPositions) {
  const Dag g = topology(5, {{1, 2}, {1, 3}, {2, 4}, {3, 5}});
  const DagPair p = layout_union({g, g, 0}, LayoutConfig{});
  EXPECT_EQ(p.base, p.alternative);
  EXPECT_TRUE(p.base.laid_out());
}

TEST(Layout, MentalMapDownwardEdgesAndBounds) {
  const LayoutConfig cfg;
  for (DensityClass c : {DensityClass::TreeLike, DensityClass::Sparse}) {
    for (const DagPair& p : some_pairs(c, 60)) {
      for (const auto& n : p.base.node_entries()) EXPECT_EQ(p.base.at(n.id), p.alternative.at(n.id));
      for (const Dag* g : {&p.base, &p.alternative}) {
        for (const Edge& e : g->edges()) EXPECT_LT(g->at(e.source).y, g->at(e.target).y);
        for (const auto& n : g->node_entries()) {
          const Point q = g->at(n.id);
          EXPECT_GE(q.x, cfg.margin);
          EXPECT_LE(q.x, cfg.canvas_width - cfg.margin);
          EXPECT_GE(q.y, cfg.margin);
          EXPECT_LE(q.y, cfg.canvas_height - cfg.margin);
        }
      }
    }
  }
}

TEST(Layout, DeeperLeafLeavesBasePositionsUnchanged) {
  const Dag g1 = topology(5, {{1, 2}, {1, 3}, {2, 4}, {3, 5}});
  Dag g2 = g1;
  g2.add_node(NodeId{6});
  g2.add_edge(NodeId{4}, NodeId{6});
  const LayoutConfig cfg;
  const DagPair alone = layout_union({g1, g1, 0}, cfg);
  const DagPair grown = layout_union({g1, g2, 0}, cfg);
  EXPECT_EQ(alone.base, grown.base);
}

TEST(Layout, TooWideThrows) {
  Dag star = topology(40, {});
  for (int i = 2; i <= 40; ++i) star.add_edge(NodeId{1}, NodeId{i});
  LayoutConfig cfg;
  cfg.canvas_width = 300;
  cfg.canvas_height = 300;
  EXPECT_THROW(layout_union({star, star, 0}, cfg), CanvasOverflow);
}

TEST(Crossings, Examples) {
  const Dag x = graph({{1, 0, 0}, {2, 10, 10}, {3, 0, 10}, {4, 10, 0}}, {{1, 2}, {3, 4}});
  const auto c = edge_crossings(x);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[0].at.x, 5.0);
  EXPECT_DOUBLE_EQ(c[0].at.y, 5.0);

  const Dag par = graph({{1, 0, 0}, {2, 0, 10}, {3, 5, 0}, {4, 5, 10}}, {{1, 2}, {3, 4}});
  EXPECT_TRUE(edge_crossings(par).empty());

  // Shared endpoints and touching do not count.
  const Dag fan = graph({{1, 0, 0}, {2, -5, 10}, {3, 5, 10}}, {{1, 2}, {1, 3}});
  EXPECT_TRUE(edge_crossings(fan).empty());
  const Dag touch = graph({{1, 0, 0}, {2, 10, 0}, {3, 5, 0}, {4, 5, 10}}, {{1, 2}, {3, 4}});
  EXPECT_TRUE(edge_crossings(touch).empty());
}

TEST(Crossings, MatchBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = rng.uniform_int(2, 12);
    const Dag g = oracle::random_dag(rng, n, rng.uniform_int(n - 1, 2 * n), 0, 30);
    EXPECT_EQ(static_cast<int>(edge_crossings(g).size()), oracle::crossing_count(g));
  }
}

TEST(Crossings, InvariantUnderEdgeOrder) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Dag g = oracle::random_dag(rng, 10, 16);
    std::vector<Edge> es = g.edges();
    rng.shuffle(es);
    Dag h;
    for (const auto& n : g.node_entries()) h.add_node(n.id, n.position);
    for (const Edge& e : es) h.add_edge(e);
    const auto a = edge_crossings(g);
    const auto b = edge_crossings(h);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].first, b[i].first);
      EXPECT_EQ(a[i].second, b[i].second);
      EXPECT_EQ(a[i].at, b[i].at);
    }
  }
}

TEST(Layers, LongestPath) {
  const auto l = longest_path_layers(topology(4, {{1, 2}, {2, 3}, {1, 3}, {1, 4}}));
  EXPECT_EQ(l.at(NodeId{1}), 0);
  EXPECT_EQ(l.at(NodeId{2}), 1);
  EXPECT_EQ(l.at(NodeId{3}), 2);
  EXPECT_EQ(l.at(NodeId{4}), 1);
}
