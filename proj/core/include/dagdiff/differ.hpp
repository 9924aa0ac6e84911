#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dagdiff/diffset.hpp"
#include "dagdiff/factors.hpp"
#include "dagdiff/render.hpp"
#include "dagdiff/rng.hpp"

namespace dagdiff {

/// Elements of G2 missing from G1.
DiffSet gt_diff(const DagPair& pair);

/// Draws a node count and an edge count from U{1..max_draw}, clamps each to
/// the GT category size (0 for an empty category) and samples that many
/// elements without replacement. Throws EmptyGT.
DiffSet random_gt(const DiffSet& gt, Rng& rng, int max_draw = 8);

/// True when the drawn element shares a pixel with the box.
bool element_in_box(const ElementRaster& raster, const Box& box, int width, int height);
bool element_in_box(const Dag& g, const Element& el, const Box& box, const RenderStyle& style);

/// Supportive minus hindering selection over the GT elements of G2.
DiffSet dfs_select(const DiffSet& gt, const std::vector<RoiBox>& rois, const DagPair& pair, const RenderStyle& style);

struct StatsRow {
  int x_count = 0;
  std::string kind;
  double mean_other_count = 0.0;
  std::size_t n = 0;
  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

/// Mean edge-diff count grouped by GT node-diff count and mean node-diff
/// count grouped by GT edge-diff count, for both GT and the human-like set.
/// Input pairs are (gt, human_like).
std::vector<StatsRow> diff_stats(const std::vector<std::pair<DiffSet, DiffSet>>& batch);

/// `x_count,kind,mean_other_count,n` with a header line.
std::string stats_csv(const std::vector<StatsRow>& rows);

}  // namespace dagdiff
