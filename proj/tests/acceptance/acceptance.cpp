// Acceptance suite. Run with --criterion N for a single criterion or without
// arguments for all nine. Prints one "criterion N: PASS|FAIL ..." line each.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

#include "dagdiff/config.hpp"
#include "dagdiff/dataset.hpp"
#include "dagdiff/differ.hpp"
#include "dagdiff/factors.hpp"
#include "dagdiff/generator.hpp"
#include "dagdiff/metrics.hpp"
#include "dagdiff/pipeline.hpp"
#include "dagdiff/render.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dagdiff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dagdiff_acceptance_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[fs::relative(e.path(), root).string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

PipelineConfig config_for(DensityClass c, int n, std::uint64_t seed) {
  PipelineConfig cfg;
  cfg.gen.density_class = c;
  cfg.gen.n_pairs = n;
  cfg.gen.seed = seed;
  return cfg;
}

Outcome criterion_1() {
  const FovGeometry g{6.0, 700.0, 3.5};
  const double d = fov_diameter_mm(g), side = fov_side_mm(g);
  const Box b = fov_box(g, Point{400, 400});
  const bool box_ok = std::abs(b.width() - side * g.px_per_mm) < 1e-9 && std::abs(b.height() - b.width()) < 1e-12 &&
                      std::abs((b.x_min + b.x_max) / 2 - 400) < 1e-9;
  return {std::abs(d - 73.0) <= 0.5 && std::abs(side - 51.62) <= 0.05 && box_ok,
          fmt("d=%.3f mm side=%.3f mm box=%.2f px", d, side, b.width())};
}

Outcome criterion_2() {
  bool pass = true;
  std::string detail;
  for (DensityClass c : {DensityClass::TreeLike, DensityClass::Sparse}) {
    const fs::path dir = scratch(std::string("c2_") + std::string(to_string(c)));
    const auto t0 = std::chrono::steady_clock::now();
    const GenerateSummary s = generate_dataset(config_for(c, 1000, 0), dir);
    const double secs = seconds_since(t0);
    const auto issues = validate_dataset(dir);
    fs::remove_all(dir);
    const bool ok = s.pairs == 1000 && s.manifest.records.size() == 3000 && secs < 300.0 && issues.empty();
    pass = pass && ok;
    detail += fmt("%s: %zu pairs in %.1f s, %zu issues; ", std::string(to_string(c)).c_str(), s.pairs, secs,
                  issues.size());
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

Outcome criterion_3() {
  std::size_t pairs = 0, violations = 0;
  for (DensityClass c : {DensityClass::TreeLike, DensityClass::Sparse})
    for_each_annotation(config_for(c, 5000, 3), [&](std::size_t, const Annotation& a) {
      ++pairs;
      if (!a.human_like.subset_of(a.gt) || a.human_like.size() > a.gt.size()) ++violations;
    });
  return {pairs >= 10000 && violations == 0, fmt("%zu pairs, %zu violations", pairs, violations)};
}

struct Offsets {
  double node = 0, edge = 0;
  std::vector<double> x, edge_delta;
};

Offsets offsets(const PipelineConfig& cfg) {
  Offsets o;
  for_each_annotation(cfg, [&](std::size_t, const Annotation& a) {
    o.node += static_cast<double>(a.gt.nodes.size()) - static_cast<double>(a.human_like.nodes.size());
    o.edge += static_cast<double>(a.gt.edges.size()) - static_cast<double>(a.human_like.edges.size());
    o.x.push_back(static_cast<double>(a.gt.nodes.size()));
    o.edge_delta.push_back(static_cast<double>(a.human_like.edges.size()) - static_cast<double>(a.gt.edges.size()));
  });
  o.node /= static_cast<double>(o.x.size());
  o.edge /= static_cast<double>(o.x.size());
  return o;
}

Outcome criterion_4() {
  const Offsets o = offsets(config_for(DensityClass::TreeLike, 1000, 7));
  return {o.node <= 0.05 && o.edge >= 0.5 && o.edge <= 1.5,
          fmt("1000 tree-like pairs: node offset %.4f (<= 0.05), edge offset %.4f (want [0.5, 1.5])", o.node, o.edge)};
}

Outcome criterion_5() {
  const Offsets o = offsets(config_for(DensityClass::Sparse, 1000, 7));
  const double rho = oracle::spearman(o.x, o.edge_delta);
  const double p = oracle::spearman_p_negative(rho, o.x.size());
  return {o.node >= 0.2 && o.node <= 0.8 && rho < 0 && p < 0.05,
          fmt("1000 sparse pairs: node offset %.4f, spearman rho %.4f, one-sided p %.3g", o.node, rho, p)};
}

BitImage rect_mask(const RectF& r, int size) {
  BitImage m(size, size);
  for (int y = static_cast<int>(r.y_min); y < static_cast<int>(r.y_max); ++y)
    for (int x = static_cast<int>(r.x_min); x < static_cast<int>(r.x_max); ++x) m.set(x, y);
  return m;
}

Outcome criterion_6() {
  Rng rng(6);
  std::size_t count_mismatch = 0, ap_mismatch = 0;
  double worst = 0;
  auto rect = [&] {
    const double x = rng.uniform_int(0, 11), y = rng.uniform_int(0, 11);
    return RectF{x, y, x + rng.uniform_int(1, 4), y + rng.uniform_int(1, 4)};
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Target> targets;
    std::vector<Prediction> preds;
    const int nt = rng.uniform_int(1, 8), np = rng.uniform_int(0, 10);
    for (int i = 0; i < nt; ++i) {
      const RectF r = rect();
      targets.push_back(Target{r, rect_mask(r, 16), rng.uniform_int(0, 1)});
    }
    for (int i = 0; i < np; ++i) {
      const RectF r = rect();
      preds.push_back(Prediction{r, rect_mask(r, 16), rng.uniform_int(0, 10) / 10.0, rng.uniform_int(0, 1)});
    }
    for (IouMode mode : {IouMode::Box, IouMode::Mask}) {
      const MatchResult m = match_predictions(preds, targets, 0.5, mode);
      if (!(oracle::Counts{m.tp, m.fp, m.fn} == oracle::brute_match(preds, targets, 0.5, mode))) ++count_mismatch;
    }
    for (auto interp : {ApInterpolation::Envelope, ApInterpolation::Trapezoid}) {
      const double got = average_precision(preds, targets, 0.5, IouMode::Box, interp).ap;
      const double err = std::abs(got - oracle::ap_by_cutoffs(preds, targets, 0.5, interp));
      worst = std::max(worst, err);
      if (err > 1e-9) ++ap_mismatch;
    }
  }
  return {count_mismatch == 0 && ap_mismatch == 0,
          fmt("1000 instances: %zu count mismatches, %zu AP mismatches, max AP error %.2g", count_mismatch,
              ap_mismatch, worst)};
}

Outcome criterion_7() {
  bool pass = true;
  std::string detail;
  for (DensityClass c : {DensityClass::TreeLike, DensityClass::Sparse}) {
    const std::string tag(to_string(c));
    const fs::path a = scratch("c7a_" + tag), b = scratch("c7b_" + tag), r = scratch("c7r_" + tag);
    const PipelineConfig cfg = config_for(c, 40, 11);
    generate_dataset(cfg, a);
    generate_dataset(cfg, b, 2);
    const bool same_bytes = tree_bytes(a) == tree_bytes(b);
    const Dataset ds = read_dataset(a);
    write_dataset(ds, r);
    const bool round_trip = read_dataset(r) == ds && tree_bytes(r) == tree_bytes(a);
    for (const auto& p : {a, b, r}) fs::remove_all(p);
    pass = pass && same_bytes && round_trip;
    detail += fmt("%s: identical=%s round-trip=%s (%zu records); ", tag.c_str(), same_bytes ? "yes" : "no",
                  round_trip ? "yes" : "no", ds.records.size());
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

Outcome criterion_8() {
  const PipelineConfig base = config_for(DensityClass::Sparse, 2000, 8);
  std::size_t total = 0, supportive = 0, pairs = 0;
  for (std::uint64_t round = 0; total < 10000; ++round) {
    PipelineConfig cfg = base;
    cfg.gen.seed = base.gen.seed + round;
    for (const DagPair& pair : sample_dataset(cfg.gen, cfg.layout)) {
      Rng rng(pair.seed, Stream::Crossing);
      ++pairs;
      for (const Dag* g : {&pair.base, &pair.alternative})
        for (const RoiBox& r :
             crossing_rois(*g, g == &pair.base ? GraphSide::Base : GraphSide::Alternative, cfg.fov, rng,
                           cfg.thresholds.crossing_supportive)) {
          if (total == 10000) break;
          ++total;
          supportive += r.is_supportive;
        }
      if (total == 10000) break;
    }
  }
  const double frac = static_cast<double>(supportive) / static_cast<double>(total);
  return {std::abs(frac - 0.70) <= 0.02,
          fmt("%zu crossing RoIs from %zu sparse pairs: supportive fraction %.4f", total, pairs, frac)};
}

Dag random_positioned(Rng& rng, int n, int m, int size) {
  Dag g = oracle::random_dag(rng, n, m, 12, size - 12);
  for (NodeId id : g.nodes()) g.set_position(id, Point{g.at(id).x + rng.uniform01(), g.at(id).y + rng.uniform01()});
  return g;
}

Outcome criterion_9() {
  constexpr std::size_t kCases = 10000;
  std::string detail;
  bool pass = true;
  auto report = [&](const char* name, std::size_t cases, std::size_t failures) {
    pass = pass && cases >= kCases && failures == 0;
    detail += fmt("%s %zu/%zu; ", name, cases - failures, cases);
  };

  {  // dfs_select laws over real annotations with random extra boxes
    Rng rng(91);
    std::size_t cases = 0, failures = 0;
    for (DensityClass c : {DensityClass::TreeLike, DensityClass::Sparse}) {
      const PipelineConfig cfg = config_for(c, 50, 9);
      for_each_annotation(cfg, [&](std::size_t, const Annotation& a) {
        for (int t = 0; t < 100; ++t, ++cases) {
          const double x = rng.uniform01() * 800, y = rng.uniform01() * 800;
          const Box extra{x, x + rng.uniform01() * 300, y, y + rng.uniform01() * 300};
          auto sup = a.rois, hind = a.rois;
          sup.push_back(RoiBox{true, extra, Factor::Density, GraphSide::Alternative});
          hind.push_back(RoiBox{false, extra, Factor::Density, GraphSide::Alternative});
          const bool ok = a.human_like.subset_of(dfs_select(a.gt, sup, a.pair, cfg.style)) &&
                          dfs_select(a.gt, hind, a.pair, cfg.style).subset_of(a.human_like);
          failures += !ok;
        }
      });
    }
    report("dfs_select monotone/antitone", cases, failures);
  }

  RenderStyle small;
  small.width = small.height = 120;

  {  // element_in_box against a pixel-scan oracle
    Rng rng(92);
    std::size_t cases = 0, failures = 0;
    while (cases < kCases) {
      const Dag g = random_positioned(rng, 3, 3, small.width);
      const double x0 = rng.uniform01() * 140 - 10, y0 = rng.uniform01() * 140 - 10;
      const Box b{x0, x0 + rng.uniform01() * 40, y0, y0 + rng.uniform01() * 40};
      for (NodeId n : g.nodes()) {
        ++cases;
        failures += element_in_box(g, n, b, small) != oracle::element_hits_box(g, n, b, small);
      }
      for (const Edge& e : g.edges()) {
        ++cases;
        failures += element_in_box(g, e, b, small) != oracle::element_hits_box(g, e, b, small);
      }
    }
    report("element_in_box", cases, failures);
  }

  {  // ink conservation: adding an element never lowers the ink count
    Rng rng(93);
    std::size_t cases = 0, failures = 0;
    while (cases < kCases) {
      const Dag full = random_positioned(rng, 6, 8, small.width);
      Dag partial;
      std::size_t prev = 0;
      for (const auto& n : full.node_entries()) {
        partial.add_node(n.id, n.position);
        const std::size_t now = binarize(render_graph(partial, small)).count();
        failures += now < prev;
        prev = now;
        ++cases;
      }
      for (const Edge& e : full.edges()) {
        partial.add_edge(e);
        const std::size_t now = binarize(render_graph(partial, small)).count();
        failures += now < prev;
        prev = now;
        ++cases;
      }
    }
    report("ink conservation", cases, failures);
  }

  {  // every instance box is the tight bound of its mask; masks partition the diff
    Rng rng(94);
    std::size_t cases = 0, failures = 0;
    while (cases < kCases) {
      const Dag g2 = random_positioned(rng, 7, 9, small.width);
      DiffSet d;
      for (NodeId n : g2.nodes())
        if (rng.bernoulli(0.3)) d.nodes.insert(n);
      for (const Edge& e : g2.edges())
        if (rng.bernoulli(0.3)) d.edges.insert(e);
      if (d.empty()) continue;
      const auto inst = instance_masks({g2, g2, 0}, d, small);
      const BitImage want = diff_mask(g2, d, small);
      BitImage uni(small.width, small.height);
      std::size_t pixels = 0;
      for (const Instance& i : inst) {
        ++cases;
        failures += i.mask.count() == 0 || !(i.box == i.mask.bounds());
        pixels += i.mask.count();
        for (int y = 0; y < small.height; ++y)
          for (int x = 0; x < small.width; ++x)
            if (i.mask.at(x, y)) uni.set(x, y);
      }
      failures += !(uni == want) || pixels != want.count();
    }
    report("mask/box tightness", cases, failures);
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (which.empty())
    for (int c = 1; c <= 9; ++c) which.push_back(c);

  int failed = 0;
  for (int c : which) {
    if (c < 1 || c > 9) {
      std::fprintf(stderr, "no criterion %d\n", c);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %d: %s %s [%.1f s]\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
