#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/layout.hpp"
#include "dagdiff/rng.hpp"

namespace dagdiff {

struct GenConfig {
  int node_min = 6;
  int node_max = 12;
  DensityClass density_class = DensityClass::TreeLike;
  int n_pairs = 100;
  int changes_min = 1;
  int changes_max = 8;
  std::uint64_t seed = 0;
  int attempt_budget = 10000;
  /// Distinct bases kept in the pool pairs are drawn from.
  int pool_size = 400;
  /// Candidates drawn to estimate the tree-like depth band.
  int depth_band_samples = 400;
};

/// Throws InvalidConfig.
void check(const GenConfig& cfg);

/// [Q1, Q3] by linear interpolation between order statistics, each rounded
/// to the nearest depth. Throws TooFewSamples below four samples.
std::pair<int, int> depth_quartile_band(std::vector<int> depths);

/// Hash of the sorted (in, out) degree sequence and the longest-path layer
/// profile. Isomorphic graphs hash equal; it drops near-duplicates from the pool.
std::uint64_t canonical_hash(const Dag& g);

/// Depth band of symmetric, crossing-free tree candidates.
std::pair<int, int> tree_depth_band(const GenConfig& cfg, const LayoutConfig& layout);

/// One base graph, laid out on its own. Tree-like bases are mirror
/// symmetric, crossing free and have a depth inside `depth_band` when given.
/// Throws ExhaustedAttempts after cfg.attempt_budget rejections.
Dag generate_base(const GenConfig& cfg, const LayoutConfig& layout, Rng& rng,
                  std::optional<std::pair<int, int>> depth_band = std::nullopt);

/// Distinct bases (by canonical_hash), drawn from the BasePool stream.
std::vector<Dag> base_pool(const GenConfig& cfg, const LayoutConfig& layout);

/// Adds exactly k elements to the base. Each new node comes with one edge
/// from an existing node; the remaining budget becomes edges between
/// existing nodes that keep the graph acyclic. When `keep_class` is set the
/// split is chosen so that G2 stays in that density class.
/// Positions are cleared. Throws NoValidAddition.
Dag create_alternative(const Dag& base, int k, Rng& rng, std::optional<DensityClass> keep_class = std::nullopt);

/// n_pairs laid-out pairs. Pair i depends only on (seed, i) and the pool.
std::vector<DagPair> sample_dataset(const GenConfig& cfg, const LayoutConfig& layout);

/// Pair i of the dataset, given the pool.
DagPair sample_pair(const GenConfig& cfg, const LayoutConfig& layout, const std::vector<Dag>& pool, std::size_t index);

}  // namespace dagdiff
