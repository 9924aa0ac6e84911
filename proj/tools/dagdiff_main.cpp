#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dagdiff/config.hpp"
#include "dagdiff/dataset.hpp"
#include "dagdiff/differ.hpp"
#include "dagdiff/errors.hpp"
#include "dagdiff/graphml.hpp"
#include "dagdiff/layout.hpp"
#include "dagdiff/metrics.hpp"
#include "dagdiff/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dagdiff;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

// Settings shared by the commands that build or re-run a pipeline.
struct PipelineFlags {
  std::optional<std::string> config_path;
  std::string density = "tree";
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<int> changes_min, changes_max;
  std::optional<double> px_per_mm;
  int jobs = 1;
};

void add_pipeline_flags(CLI::App& cmd, PipelineFlags& f, bool with_class) {
  cmd.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  if (with_class)
    cmd.add_option("--class", f.density, "Density class")->check(CLI::IsMember({"tree", "sparse", "both"}));
  cmd.add_option("--seed", f.seed, "Master seed");
  cmd.add_option("--changes-min", f.changes_min, "Fewest added elements per pair");
  cmd.add_option("--changes-max", f.changes_max, "Most added elements per pair");
  cmd.add_option("--px-per-mm", f.px_per_mm, "Display resolution for the field-of-view box");
  cmd.add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

nlohmann::json read_json_file(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

bool config_has(const nlohmann::json& j, const char* section, const char* key) {
  auto s = j.find(section);
  return s != j.end() && s->is_object() && s->contains(key);
}

// Resolves flag > config file > default and prints where each value came from.
PipelineConfig resolve(const PipelineFlags& f, std::optional<DensityClass> density, bool class_flag, bool n_flag,
                       std::ostream& header) {
  nlohmann::json file = nlohmann::json::object();
  PipelineConfig cfg;
  if (f.config_path) {
    file = read_json_file(*f.config_path);
    cfg = apply_json(file, cfg);
  }
  auto source = [&](bool flag, const char* section, const char* key) {
    return flag ? "flag" : config_has(file, section, key) ? "config" : "default";
  };
  if (density) cfg.gen.density_class = *density;
  if (f.n) cfg.gen.n_pairs = *f.n;
  if (f.seed) cfg.gen.seed = *f.seed;
  if (f.changes_min) cfg.gen.changes_min = *f.changes_min;
  if (f.changes_max) cfg.gen.changes_max = *f.changes_max;
  if (f.px_per_mm) cfg.fov.px_per_mm = *f.px_per_mm;
  check(cfg);

  header << "# config file: " << (f.config_path ? *f.config_path : std::string("(none)")) << "\n";
  header << "# class       = " << to_string(cfg.gen.density_class) << " ("
         << source(class_flag, "generator", "density_class") << ")\n";
  header << "# n           = " << cfg.gen.n_pairs << " (" << source(n_flag, "generator", "n_pairs") << ")\n";
  header << "# seed        = " << cfg.gen.seed << " (" << source(f.seed.has_value(), "generator", "seed") << ")\n";
  header << "# changes_min = " << cfg.gen.changes_min << " ("
         << source(f.changes_min.has_value(), "generator", "changes_min") << ")\n";
  header << "# changes_max = " << cfg.gen.changes_max << " ("
         << source(f.changes_max.has_value(), "generator", "changes_max") << ")\n";
  header << "# px_per_mm   = " << cfg.fov.px_per_mm << " (" << source(f.px_per_mm.has_value(), "fov", "px_per_mm")
         << ")\n";
  header << "# jobs        = " << f.jobs << "\n";
  return cfg;
}

int run_generate(const PipelineFlags& f, bool class_flag, const fs::path& out) {
  std::vector<std::pair<DensityClass, fs::path>> runs;
  if (f.density == "both") {
    runs = {{DensityClass::TreeLike, out / "tree"}, {DensityClass::Sparse, out / "sparse"}};
  } else {
    runs = {{*parse_density_class(f.density), out}};
  }
  for (const auto& [density, dir] : runs) {
    const PipelineConfig cfg = resolve(f, density, class_flag, f.n.has_value(), std::cout);
    std::cout << "# out         = " << dir.string() << "\n";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), ec.message());

    const auto t0 = std::chrono::steady_clock::now();
    const GenerateSummary s = generate_dataset(cfg, dir, f.jobs);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("pairs=%zu records=%zu gt_elements=%zu random_gt_elements=%zu human_like_elements=%zu seconds=%.1f\n",
                s.pairs, s.manifest.records.size(), s.gt_elements, s.random_gt_elements, s.human_like_elements, secs);
  }
  return 0;
}

Dag load_graph(const fs::path& p) {
  try {
    return load_graphml(p);
  } catch (const FormatError& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

int run_augment(const PipelineFlags& f, const fs::path& base, const fs::path& alt, const fs::path& out) {
  const PipelineConfig cfg = resolve(f, std::nullopt, false, false, std::cout);
  DagPair pair{load_graph(base), load_graph(alt), cfg.gen.seed};
  const PairLimits limits{cfg.gen.changes_min, cfg.gen.changes_max, std::nullopt};
  if (!pair.base.laid_out() || !pair.alternative.laid_out() || !validate_pair(pair, limits).empty())
    pair = layout_union(pair, cfg.layout);
  if (const auto v = validate_pair(pair, limits); !v.empty()) {
    for (const auto& x : v) std::cerr << "pair: " << to_string(x.kind) << ": " << x.detail << "\n";
    return kExitViolation;
  }

  const Annotation a = annotate(pair, cfg);
  DatasetManifest m;
  m.config = to_json(cfg);
  const DiffSet* diffs[] = {&a.gt, &a.random_gt, &a.human_like};
  for (std::size_t k = 0; k < 3; ++k) {
    const RecordData r = make_record(a.pair, *diffs[k], 0, cfg.style, a.img_base, a.img_alt);
    write_record_files(r, out, k == 0);
    m.records.push_back(r.meta);
  }
  write_manifest(m, out);

  std::map<std::string, std::pair<int, int>> by_factor;
  for (const RoiBox& r : a.rois) (r.is_supportive ? by_factor[std::string(to_string(r.factor))].first
                                                  : by_factor[std::string(to_string(r.factor))].second)++;
  for (const auto& [factor, c] : by_factor) std::printf("roi %s supportive=%d hindering=%d\n", factor.c_str(), c.first, c.second);
  std::printf("gt=%zu random_gt=%zu human_like=%zu\n", a.gt.size(), a.random_gt.size(), a.human_like.size());
  return 0;
}

// Recomputes the human-like set of every pair from its graphs and the
// config snapshot, and checks it against the stored masks.
int run_stats(const fs::path& dir, const std::optional<fs::path>& out) {
  const DatasetManifest m = read_manifest(dir);
  const PipelineConfig cfg = apply_json(m.config);
  std::vector<std::pair<DiffSet, DiffSet>> batch;
  int mismatches = 0;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const TargetRecord& r = m.records[i];
    if (r.kind != DiffKind::HumanLike) continue;
    const DagPair pair{load_graph(dir / r.graphml_base), load_graph(dir / r.graphml_alt), r.seed};
    const Annotation a = annotate(pair, cfg);
    std::vector<BitImage> stored;
    for (const auto& mask : r.masks) stored.push_back(decode_png_mask(read_file(dir / mask)));
    std::vector<BitImage> recomputed;
    for (auto& inst : instance_masks(a.pair, a.human_like, cfg.style)) recomputed.push_back(std::move(inst.mask));
    if (stored != recomputed) {
      std::cerr << "record " << i << ": stored human-like masks differ from a re-run\n";
      ++mismatches;
    }
    batch.emplace_back(a.gt, a.human_like);
  }
  const std::string csv = stats_csv(diff_stats(batch));
  if (out) {
    write_file(*out, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  } else {
    std::cout << csv;
  }
  return mismatches ? kExitViolation : 0;
}

struct EvalFlags {
  fs::path dir, predictions;
  double iou_thr = 0.5;
  double score_thr = 0.92;
  std::string kind = "human_like";
  bool mask = false;
  bool trapezoid = false;
  std::optional<fs::path> report, curve;
};

int run_evaluate(const EvalFlags& f) {
  const DatasetManifest m = read_manifest(f.dir);
  const DiffKind kind = *parse_diff_kind(f.kind);
  std::vector<Target> targets;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const TargetRecord& r = m.records[i];
    if (r.kind != kind) continue;
    for (std::size_t k = 0; k < r.boxes.size(); ++k) {
      const auto& b = r.boxes[k];
      Target t;
      t.box = rect_from_pixels(PixelBox{b[0], b[1], b[2], b[3]});
      if (f.mask) t.mask = decode_png_mask(read_file(f.dir / r.masks[k]));
      t.record_index = static_cast<long>(i);
      targets.push_back(std::move(t));
    }
  }
  const auto preds = read_predictions(f.predictions);
  const EvalReport rep = evaluate(preds, targets, f.iou_thr, f.score_thr, f.mask ? IouMode::Mask : IouMode::Box,
                                  f.trapezoid ? ApInterpolation::Trapezoid : ApInterpolation::Envelope);
  const std::string json = report_json(rep);
  if (f.report) {
    write_file(*f.report, std::span(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
  } else {
    std::cout << json;
  }
  if (f.curve) {
    const std::string csv = pr_curve_csv(rep);
    write_file(*f.curve, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  }
  return 0;
}

int run_validate(const fs::path& dir) {
  const auto issues = validate_dataset(dir);
  for (const auto& i : issues) std::cerr << "record " << i.record_index << ": " << i.detail << "\n";
  if (!issues.empty()) {
    std::cout << issues.size() << " violation(s)\n";
    return kExitViolation;
  }
  std::cout << "ok " << read_manifest(dir).records.size() << " records\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic DAG-pair difference datasets"};
  app.require_subcommand(1);

  PipelineFlags gen_flags;
  fs::path gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a dataset");
  add_pipeline_flags(*gen, gen_flags, true);
  gen->add_option("--n", gen_flags.n, "Number of pairs")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory")->required();

  PipelineFlags aug_flags;
  fs::path aug_base, aug_alt, aug_out;
  auto* aug = app.add_subcommand("augment", "Annotate an existing GraphML pair");
  add_pipeline_flags(*aug, aug_flags, false);
  aug->add_option("--base", aug_base, "Base graph")->required()->check(CLI::ExistingFile);
  aug->add_option("--alt", aug_alt, "Alternative graph")->required()->check(CLI::ExistingFile);
  aug->add_option("--out", aug_out, "Output directory")->required();

  fs::path stats_dir;
  std::optional<fs::path> stats_out;
  auto* stats = app.add_subcommand("stats", "Diff statistics of a dataset as CSV");
  stats->add_option("dir", stats_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  stats->add_option("--out", stats_out, "CSV file (default stdout)");

  EvalFlags ev;
  auto* eval = app.add_subcommand("evaluate", "Score predictions against a dataset");
  eval->add_option("dir", ev.dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--predictions", ev.predictions, "Prediction JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--iou-thr", ev.iou_thr, "IoU needed for a match")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--score-thr", ev.score_thr, "Score cut for precision, recall and F1")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--kind", ev.kind, "Records to score")->check(CLI::IsMember({"gt", "random_gt", "human_like"}));
  eval->add_flag("--mask", ev.mask, "Match on masks instead of boxes");
  eval->add_flag("--trapezoid", ev.trapezoid, "Trapezoidal AP instead of the precision envelope");
  eval->add_option("--out", ev.report, "Report JSON (default stdout)");
  eval->add_option("--pr-curve", ev.curve, "PR curve CSV");

  fs::path val_dir;
  auto* val = app.add_subcommand("validate", "Check every dataset invariant");
  val->add_option("dir", val_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return run_generate(gen_flags, gen->count("--class") > 0, gen_out);
    if (*aug) return run_augment(aug_flags, aug_base, aug_alt, aug_out);
    if (*stats) return run_stats(stats_dir, stats_out);
    if (*eval) return run_evaluate(ev);
    if (*val) return run_validate(val_dir);
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return 0;
}
