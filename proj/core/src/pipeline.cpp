#include "dagdiff/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "dagdiff/errors.hpp"
#include "dagdiff/generator.hpp"

namespace dagdiff {
namespace {

// Runs f(i) for i in [0, n) on up to `jobs` threads; rethrows the first error
// by index so failures are reproducible regardless of scheduling.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class F>
void append_skipping_degenerate(std::vector<RoiBox>& out, F&& f) {
  try {
    auto rois = f();
    out.insert(out.end(), rois.begin(), rois.end());
  } catch (const DegenerateHull&) {
  }
}

}  // namespace

std::vector<RoiBox> compute_rois(const DagPair& pair, const BitImage& ink_base, const BitImage& ink_alt,
                                 const PipelineConfig& cfg) {
  const FactorThresholds& t = cfg.thresholds;
  std::vector<RoiBox> rois;
  auto add = [&](std::vector<RoiBox> more) { rois.insert(rois.end(), more.begin(), more.end()); };

  add(symmetry_rois(pair.base, GraphSide::Base, t.symmetry_tolerance));
  add(symmetry_rois(pair.alternative, GraphSide::Alternative, t.symmetry_tolerance));
  append_skipping_degenerate(rois, [&] { return shape_rois(pair, cfg.style.width, cfg.style.height); });

  Rng crossing_rng(pair.seed, Stream::Crossing);
  add(crossing_rois(pair.base, GraphSide::Base, cfg.fov, crossing_rng, t.crossing_supportive));
  add(crossing_rois(pair.alternative, GraphSide::Alternative, cfg.fov, crossing_rng, t.crossing_supportive));

  add(depth_rois(pair));
  add(density_rois(ink_alt, cfg.fov, t));
  append_skipping_degenerate(rois, [&] { return whitespace_rois(pair.base, ink_base, GraphSide::Base, t); });
  append_skipping_degenerate(rois, [&] { return whitespace_rois(pair.alternative, ink_alt, GraphSide::Alternative, t); });

  std::erase_if(rois, [&](const RoiBox& r) { return !intersects_canvas(r.box, cfg.style.width, cfg.style.height); });
  return rois;
}

Annotation annotate(const DagPair& pair, const PipelineConfig& cfg) {
  Annotation a;
  a.pair = pair;
  a.img_base = render_graph(pair.base, cfg.style);
  a.img_alt = render_graph(pair.alternative, cfg.style);
  a.rois = compute_rois(pair, binarize(a.img_base), binarize(a.img_alt), cfg);
  a.gt = gt_diff(pair);
  Rng rgt(pair.seed, Stream::RandomGT);
  a.random_gt = random_gt(a.gt, rgt);
  a.human_like = dfs_select(a.gt, a.rois, pair, cfg.style);
  return a;
}

std::vector<Annotation> annotate_dataset(const PipelineConfig& cfg, int jobs) {
  check(cfg);
  const auto pool = base_pool(cfg.gen, cfg.layout);
  std::vector<Annotation> out(static_cast<std::size_t>(cfg.gen.n_pairs));
  parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = annotate(sample_pair(cfg.gen, cfg.layout, pool, i), cfg); });
  return out;
}

void for_each_annotation(const PipelineConfig& cfg, const std::function<void(std::size_t, const Annotation&)>& visit,
                         int jobs) {
  check(cfg);
  const auto pool = base_pool(cfg.gen, cfg.layout);
  std::mutex visit_mutex;
  parallel_for(static_cast<std::size_t>(cfg.gen.n_pairs), jobs, [&](std::size_t i) {
    const Annotation a = annotate(sample_pair(cfg.gen, cfg.layout, pool, i), cfg);
    const std::lock_guard lock(visit_mutex);
    visit(i, a);
  });
}

GenerateSummary generate_dataset(const PipelineConfig& cfg, const std::filesystem::path& dir, int jobs,
                                 const std::function<void(std::size_t)>& progress) {
  check(cfg);
  const auto pool = base_pool(cfg.gen, cfg.layout);
  const auto n = static_cast<std::size_t>(cfg.gen.n_pairs);

  std::vector<std::array<TargetRecord, 3>> records(n);
  std::vector<std::array<std::size_t, 3>> sizes(n);
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(n, jobs, [&](std::size_t i) {
    const Annotation a = annotate(sample_pair(cfg.gen, cfg.layout, pool, i), cfg);
    const DiffSet* diffs[] = {&a.gt, &a.random_gt, &a.human_like};
    for (std::size_t k = 0; k < 3; ++k) {
      const RecordData r = make_record(a.pair, *diffs[k], i, cfg.style, a.img_base, a.img_alt);
      write_record_files(r, dir, k == 0);
      records[i][k] = r.meta;
      sizes[i][k] = diffs[k]->size();
    }
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(++done);
    }
  });

  GenerateSummary s;
  s.pairs = n;
  s.manifest.config = to_json(cfg);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& r : records[i]) s.manifest.records.push_back(r);
    s.gt_elements += sizes[i][0];
    s.random_gt_elements += sizes[i][1];
    s.human_like_elements += sizes[i][2];
  }
  write_manifest(s.manifest, dir);
  return s;
}

}  // namespace dagdiff
