#include "dagdiff/generator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

#include "dagdiff/errors.hpp"
#include "dagdiff/factors.hpp"

namespace dagdiff {
namespace {

// Ordered (plane) tree used to build mirror-symmetric candidates.
struct PlaneTree {
  std::vector<std::vector<int>> children;

  int add() {
    children.emplace_back();
    return static_cast<int>(children.size()) - 1;
  }

  int mirror_copy(int v) {
    const int c = add();
    std::vector<int> kids = children[static_cast<std::size_t>(v)];
    std::reverse(kids.begin(), kids.end());
    for (int k : kids) {
      const int m = mirror_copy(k);
      children[static_cast<std::size_t>(c)].push_back(m);
    }
    return c;
  }

  std::vector<int> random_forest(int m, Rng& rng) {
    if (m <= 0) return {};
    const int roots = rng.uniform_int(1, m);
    std::vector<int> made;
    std::vector<int> out;
    for (int i = 0; i < roots; ++i) {
      out.push_back(add());
      made.push_back(out.back());
    }
    for (int i = roots; i < m; ++i) {
      const int parent = made[rng.index(made.size())];
      const int c = add();
      children[static_cast<std::size_t>(parent)].push_back(c);
      made.push_back(c);
    }
    return out;
  }

  // Subtree rooted on the mirror axis with exactly `budget` nodes.
  int symmetric(int budget, Rng& rng) {
    const int root = add();
    const int rest = budget - 1;
    std::vector<int> axis_sizes;
    for (int a = rest % 2; a <= rest; a += 2) axis_sizes.push_back(a);
    const int axis = axis_sizes[rng.index(axis_sizes.size())];
    const std::vector<int> left = random_forest((rest - axis) / 2, rng);
    std::vector<int> kids = left;
    if (axis > 0) kids.push_back(symmetric(axis, rng));
    for (auto it = left.rbegin(); it != left.rend(); ++it) kids.push_back(mirror_copy(*it));
    children[static_cast<std::size_t>(root)] = kids;
    return root;
  }

  // Labels in breadth-first, left-to-right order starting from 1.
  [[nodiscard]] Dag to_dag(int root) const {
    std::vector<int> label(children.size(), 0);
    std::deque<int> queue{root};
    int next = 1;
    std::vector<int> order;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      label[static_cast<std::size_t>(v)] = next++;
      order.push_back(v);
      for (int c : children[static_cast<std::size_t>(v)]) queue.push_back(c);
    }
    Dag g;
    for (int v : order) g.add_node(NodeId{label[static_cast<std::size_t>(v)]});
    for (int v : order)
      for (int c : children[static_cast<std::size_t>(v)])
        g.add_edge(NodeId{label[static_cast<std::size_t>(v)]}, NodeId{label[static_cast<std::size_t>(c)]});
    return g;
  }
};

int layer_count(const Dag& g) {
  int depth = 0;
  for (const auto& [_, l] : longest_path_layers(g)) depth = std::max(depth, l + 1);
  return depth;
}

// Symmetric crossing-free tree, laid out; nullopt when a check fails.
std::optional<Dag> tree_candidate(const GenConfig& cfg, const LayoutConfig& layout, Rng& rng) {
  const int n = rng.uniform_int(cfg.node_min, cfg.node_max);
  PlaneTree t;
  const int root = t.symmetric(n, rng);
  Dag g = t.to_dag(root);
  try {
    g = layout_dag(g, layout);
  } catch (const CanvasOverflow&) {
    return std::nullopt;
  }
  FactorThresholds th;
  if (!mirror_symmetric(g, th.symmetry_tolerance) || !edge_crossings(g).empty()) return std::nullopt;
  if (!in_density_class(linear_density(g), DensityClass::TreeLike)) return std::nullopt;
  return g;
}

std::optional<Dag> sparse_candidate(const GenConfig& cfg, const LayoutConfig& layout, Rng& rng) {
  const int n = rng.uniform_int(cfg.node_min, cfg.node_max);
  const int max_edges = std::min(2 * n, n * (n - 1) / 2);
  if (n + 1 > max_edges) return std::nullopt;
  const int m = rng.uniform_int(n + 1, max_edges);

  Dag g;
  for (int v = 1; v <= n; ++v) g.add_node(NodeId{v});
  // Random spanning tree in label order keeps node 1 the only root.
  for (int v = 2; v <= n; ++v) g.add_edge(NodeId{rng.uniform_int(1, v - 1)}, NodeId{v});
  std::vector<Edge> free;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (!g.has_edge(Edge{NodeId{u}, NodeId{v}})) free.push_back(Edge{NodeId{u}, NodeId{v}});
  for (const Edge& e : rng.sample(free, static_cast<std::size_t>(m - (n - 1)))) g.add_edge(e);

  try {
    g = layout_dag(g, layout);
  } catch (const CanvasOverflow&) {
    return std::nullopt;
  }
  if (!in_density_class(linear_density(g), DensityClass::Sparse)) return std::nullopt;
  return g;
}

bool reaches(const Dag& g, NodeId from, NodeId to) {
  std::set<NodeId> seen{from};
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (NodeId w : g.successors(v))
      if (seen.insert(w).second) stack.push_back(w);
  }
  return false;
}

std::vector<Edge> acyclic_candidates(const Dag& g) {
  std::vector<Edge> out;
  const auto nodes = g.nodes();
  for (NodeId u : nodes)
    for (NodeId v : nodes)
      if (u != v && !g.has_edge(Edge{u, v}) && !reaches(g, v, u)) out.push_back(Edge{u, v});
  return out;
}

Dag without_positions(Dag g) {
  g.clear_positions();
  return g;
}

}  // namespace

void check(const GenConfig& cfg) {
  if (cfg.node_min < 2 || cfg.node_max < cfg.node_min) throw InvalidConfig("node range must satisfy 2 <= min <= max");
  if (cfg.node_max > static_cast<int>(kMaxNodes)) throw InvalidConfig("node_max exceeds the supported graph size");
  if (cfg.changes_min < 1 || cfg.changes_max < cfg.changes_min || cfg.changes_max > 8)
    throw InvalidConfig("changes must satisfy 1 <= min <= max <= 8");
  if (cfg.n_pairs < 0) throw InvalidConfig("n_pairs must be non-negative");
  if (cfg.attempt_budget < 1) throw InvalidConfig("attempt budget must be positive");
  if (cfg.pool_size < 1) throw InvalidConfig("pool size must be positive");
  if (cfg.depth_band_samples < 4) throw InvalidConfig("depth band needs at least four samples");
}

std::pair<int, int> depth_quartile_band(std::vector<int> depths) {
  if (depths.size() < 4) throw TooFewSamples("depth band needs at least four samples");
  std::sort(depths.begin(), depths.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(depths.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, depths.size() - 1);
    const double v = depths[lo] + (pos - static_cast<double>(lo)) * (depths[hi] - depths[lo]);
    return static_cast<int>(std::lround(v));
  };
  return {quantile(0.25), quantile(0.75)};
}

std::uint64_t canonical_hash(const Dag& g) {
  std::vector<std::pair<int, int>> degrees;
  for (NodeId v : g.nodes())
    degrees.emplace_back(static_cast<int>(g.predecessors(v).size()), static_cast<int>(g.successors(v).size()));
  std::sort(degrees.begin(), degrees.end());
  std::map<int, int> profile;
  for (const auto& [_, l] : longest_path_layers(g)) ++profile[l];

  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  mix(g.node_count());
  mix(g.edge_count());
  for (const auto& [in, out] : degrees) mix(static_cast<std::uint64_t>(in) << 32 | static_cast<std::uint32_t>(out));
  for (const auto& [l, count] : profile) mix(static_cast<std::uint64_t>(l) << 32 | static_cast<std::uint32_t>(count));
  return h;
}

std::pair<int, int> tree_depth_band(const GenConfig& cfg, const LayoutConfig& layout) {
  Rng rng(cfg.seed, Stream::DepthBand);
  std::vector<int> depths;
  int attempts = 0;
  while (static_cast<int>(depths.size()) < cfg.depth_band_samples) {
    if (++attempts > cfg.attempt_budget) throw ExhaustedAttempts("no tree candidates for the depth band");
    if (auto g = tree_candidate(cfg, layout, rng)) depths.push_back(layer_count(*g));
  }
  return depth_quartile_band(std::move(depths));
}

Dag generate_base(const GenConfig& cfg, const LayoutConfig& layout, Rng& rng,
                  std::optional<std::pair<int, int>> depth_band) {
  check(cfg);
  for (int attempt = 0; attempt < cfg.attempt_budget; ++attempt) {
    if (cfg.density_class == DensityClass::TreeLike) {
      auto g = tree_candidate(cfg, layout, rng);
      if (!g) continue;
      const int depth = layer_count(*g);
      if (depth_band && (depth < depth_band->first || depth > depth_band->second)) continue;
      return *g;
    }
    if (auto g = sparse_candidate(cfg, layout, rng)) return *g;
  }
  throw ExhaustedAttempts("no " + std::string(to_string(cfg.density_class)) + " base within " +
                          std::to_string(cfg.attempt_budget) + " attempts");
}

std::vector<Dag> base_pool(const GenConfig& cfg, const LayoutConfig& layout) {
  check(cfg);
  std::optional<std::pair<int, int>> band;
  if (cfg.density_class == DensityClass::TreeLike) band = tree_depth_band(cfg, layout);

  Rng rng(cfg.seed, Stream::BasePool);
  std::vector<Dag> pool;
  std::unordered_set<std::uint64_t> seen;
  int misses = 0;
  while (static_cast<int>(pool.size()) < cfg.pool_size && misses < cfg.attempt_budget) {
    Dag g = generate_base(cfg, layout, rng, band);
    if (seen.insert(canonical_hash(g)).second) {
      pool.push_back(std::move(g));
      misses = 0;
    } else {
      ++misses;
    }
  }
  return pool;
}

Dag create_alternative(const Dag& base, int k, Rng& rng, std::optional<DensityClass> keep_class) {
  if (k < 1 || k > 8) throw std::invalid_argument("k must lie in [1, 8]");
  const int v1 = static_cast<int>(base.node_count());
  const int e1 = static_cast<int>(base.edge_count());

  std::vector<int> splits;  // number of added nodes
  for (int m = 0; 2 * m <= k; ++m) {
    const int r = k - 2 * m;
    const int v2 = v1 + m;
    const int e2 = e1 + m + r;
    if (v2 > static_cast<int>(kMaxNodes)) continue;
    if (keep_class && !in_density_class(static_cast<double>(e2) / v2, *keep_class)) continue;
    splits.push_back(m);
  }
  if (splits.empty()) throw NoValidAddition("no node/edge split of " + std::to_string(k) + " keeps the density class");
  const int m = splits[rng.index(splits.size())];

  Dag g = without_positions(base);
  for (int i = 0; i < m; ++i) {
    const auto nodes = g.nodes();
    const NodeId parent = nodes[rng.index(nodes.size())];
    const NodeId fresh{g.max_label() + 1};
    g.add_node(fresh);
    g.add_edge(parent, fresh);
  }
  for (int i = 0; i < k - 2 * m; ++i) {
    const auto candidates = acyclic_candidates(g);
    if (candidates.empty()) throw NoValidAddition("no edge can be added without a cycle");
    g.add_edge(candidates[rng.index(candidates.size())]);
  }
  return g;
}

DagPair sample_pair(const GenConfig& cfg, const LayoutConfig& layout, const std::vector<Dag>& pool, std::size_t index) {
  if (pool.empty()) throw ExhaustedAttempts("empty base pool");
  const std::uint64_t pair_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(Stream::Pair), index);
  Rng rng(pair_seed);
  const PairLimits limits{cfg.changes_min, cfg.changes_max, cfg.density_class};
  for (int attempt = 0; attempt < cfg.attempt_budget; ++attempt) {
    const Dag& base = pool[rng.index(pool.size())];
    const int k = rng.uniform_int(cfg.changes_min, cfg.changes_max);
    Dag alt;
    try {
      alt = create_alternative(base, k, rng, cfg.density_class);
    } catch (const NoValidAddition&) {
      continue;
    }
    DagPair pair;
    try {
      pair = layout_union(DagPair{without_positions(base), alt, pair_seed}, layout);
    } catch (const CanvasOverflow&) {
      continue;
    }
    if (cfg.density_class == DensityClass::TreeLike && !edge_crossings(pair.base).empty()) continue;
    if (!validate_pair(pair, limits).empty()) continue;
    return pair;
  }
  throw ExhaustedAttempts("pair " + std::to_string(index) + ": no valid alternative within the attempt budget");
}

std::vector<DagPair> sample_dataset(const GenConfig& cfg, const LayoutConfig& layout) {
  const auto pool = base_pool(cfg, layout);
  std::vector<DagPair> out;
  out.reserve(static_cast<std::size_t>(cfg.n_pairs));
  for (int i = 0; i < cfg.n_pairs; ++i) out.push_back(sample_pair(cfg, layout, pool, static_cast<std::size_t>(i)));
  return out;
}

}  // namespace dagdiff
