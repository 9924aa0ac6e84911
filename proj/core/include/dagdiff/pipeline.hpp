#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "dagdiff/config.hpp"
#include "dagdiff/dataset.hpp"
#include "dagdiff/differ.hpp"

namespace dagdiff {

/// DFS part one for a laid-out pair. Crossing draws come from the pair's
/// Crossing stream, base crossings first. Shape and white space are skipped
/// for a side whose nodes span no area.
std::vector<RoiBox> compute_rois(const DagPair& pair, const BitImage& ink_base, const BitImage& ink_alt,
                                 const PipelineConfig& cfg);

struct Annotation {
  DagPair pair;
  Image img_base;
  Image img_alt;
  std::vector<RoiBox> rois;
  DiffSet gt;
  DiffSet random_gt;
  DiffSet human_like;
};

/// Renders the pair, computes RoIs and derives all three diff sets.
Annotation annotate(const DagPair& pair, const PipelineConfig& cfg);

struct GenerateSummary {
  DatasetManifest manifest;
  std::size_t pairs = 0;
  std::size_t gt_elements = 0;
  std::size_t random_gt_elements = 0;
  std::size_t human_like_elements = 0;
};

/// Generates cfg.gen.n_pairs pairs into `dir`, three records per pair (GT,
/// random(GT), human-like). Output bytes do not depend on `jobs`.
/// `progress`, when set, is called with the number of finished pairs.
GenerateSummary generate_dataset(const PipelineConfig& cfg, const std::filesystem::path& dir, int jobs = 1,
                                 const std::function<void(std::size_t)>& progress = {});

/// Annotations for cfg.gen.n_pairs pairs without touching the disk. Holds
/// every image in memory; prefer for_each_annotation for large runs.
std::vector<Annotation> annotate_dataset(const PipelineConfig& cfg, int jobs = 1);

/// Streams the same annotations to `visit(index, annotation)`. Calls are
/// serialized but arrive in index order only when jobs == 1.
void for_each_annotation(const PipelineConfig& cfg, const std::function<void(std::size_t, const Annotation&)>& visit,
                         int jobs = 1);

}  // namespace dagdiff
