#include "dagdiff/dataset.hpp"

#include <cstdio>
#include <set>

#include "dagdiff/config.hpp"
#include "dagdiff/differ.hpp"
#include "dagdiff/errors.hpp"
#include "dagdiff/graphml.hpp"

namespace dagdiff {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string stem(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return buf;
}

void write_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.parent_path().string(), ec.message());
  write_file(path, bytes);
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

PairLimits limits_from(const PipelineConfig& cfg) {
  return PairLimits{cfg.gen.changes_min, cfg.gen.changes_max, cfg.gen.density_class};
}

PipelineConfig config_from(const ordered_json& snapshot) {
  // ordered_json and json share the value model; round-trip through text.
  return apply_json(nlohmann::json::parse(snapshot.dump()));
}

RecordData load_record(const fs::path& dir, const TargetRecord& meta) {
  RecordData r;
  r.meta = meta;
  r.pair.base = read_graphml(read_text(dir / meta.graphml_base));
  r.pair.alternative = read_graphml(read_text(dir / meta.graphml_alt));
  r.pair.seed = meta.seed;
  r.img_base = decode_png_rgb(read_file(dir / meta.img_base));
  r.img_alt = decode_png_rgb(read_file(dir / meta.img_alt));
  r.img_diff = decode_png_rgb(read_file(dir / meta.img_diff));
  for (const auto& m : meta.masks) r.masks.push_back(decode_png_mask(read_file(dir / m)));
  return r;
}

}  // namespace

std::string PairPaths::img_diff(DiffKind kind) const {
  return "images/" + stem(index) + "_" + std::string(to_string(kind)) + "_diff.png";
}

std::string PairPaths::mask(DiffKind kind, std::size_t instance) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%02zu.png", instance);
  return "masks/" + stem(index) + "_" + std::string(to_string(kind)) + buf;
}

PairPaths pair_paths(std::size_t index) {
  PairPaths p;
  p.index = index;
  p.graphml_base = "graphs/" + stem(index) + "_base.graphml";
  p.graphml_alt = "graphs/" + stem(index) + "_alt.graphml";
  p.img_base = "images/" + stem(index) + "_base.png";
  p.img_alt = "images/" + stem(index) + "_alt.png";
  return p;
}

std::vector<Instance> instance_masks(const DagPair& pair, const DiffSet& diff, const RenderStyle& style) {
  const BitImage all = diff_mask(pair.alternative, diff, style);
  const Components cc = connected_components(all);
  std::vector<Instance> out(cc.count());
  for (auto& inst : out) inst.mask = BitImage(style.width, style.height);
  for (int y = 0; y < style.height; ++y)
    for (int x = 0; x < style.width; ++x)
      if (const int l = cc.label_at(x, y); l > 0) out[static_cast<std::size_t>(l - 1)].mask.set(x, y);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].box = cc.boxes[i];
  return out;
}

RecordData make_record(const DagPair& pair, const DiffSet& diff, std::size_t pair_index, const RenderStyle& style) {
  return make_record(pair, diff, pair_index, style, render_graph(pair.base, style), render_graph(pair.alternative, style));
}

RecordData make_record(const DagPair& pair, const DiffSet& diff, std::size_t pair_index, const RenderStyle& style,
                       const Image& img_base, const Image& img_alt) {
  const PairPaths paths = pair_paths(pair_index);
  RecordData r;
  r.pair = pair;
  r.img_base = img_base;
  r.img_alt = img_alt;
  r.img_diff = render_diff(pair, diff, style);
  r.meta.graphml_base = paths.graphml_base;
  r.meta.graphml_alt = paths.graphml_alt;
  r.meta.img_base = paths.img_base;
  r.meta.img_alt = paths.img_alt;
  r.meta.img_diff = paths.img_diff(diff.kind);
  r.meta.kind = diff.kind;
  r.meta.seed = pair.seed;
  auto instances = instance_masks(pair, diff, style);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const PixelBox& b = instances[i].box;
    r.meta.masks.push_back(paths.mask(diff.kind, i));
    r.meta.boxes.push_back({b.x0, b.y0, b.x1, b.y1});
    r.meta.labels.push_back(instances[i].label);
    r.masks.push_back(std::move(instances[i].mask));
  }
  return r;
}

void write_record_files(const RecordData& rec, const fs::path& dir, bool shared) {
  if (shared) {
    write_text(dir / rec.meta.graphml_base, write_graphml(rec.pair.base));
    write_text(dir / rec.meta.graphml_alt, write_graphml(rec.pair.alternative));
    write_bytes(dir / rec.meta.img_base, encode_png(rec.img_base));
    write_bytes(dir / rec.meta.img_alt, encode_png(rec.img_alt));
  }
  write_bytes(dir / rec.meta.img_diff, encode_png(rec.img_diff));
  for (std::size_t i = 0; i < rec.masks.size(); ++i) write_bytes(dir / rec.meta.masks[i], encode_png(rec.masks[i]));
}

std::string manifest_json(const DatasetManifest& m) {
  ordered_json j;
  j["format_version"] = m.format_version;
  j["config"] = m.config;
  j["records"] = ordered_json::array();
  for (const TargetRecord& r : m.records) {
    ordered_json o;
    o["graphml_base"] = r.graphml_base;
    o["graphml_alt"] = r.graphml_alt;
    o["img_base"] = r.img_base;
    o["img_alt"] = r.img_alt;
    o["img_diff"] = r.img_diff;
    o["masks"] = r.masks;
    o["boxes"] = r.boxes;
    o["labels"] = r.labels;
    o["kind"] = std::string(to_string(r.kind));
    o["seed"] = r.seed;
    j["records"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("manifest: expected an object");
  DatasetManifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    m.config = j.at("config");
  } catch (const ordered_json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  if (m.format_version != kFormatVersion)
    throw FormatError("manifest: unsupported format_version " + std::to_string(m.format_version));
  const auto records = j.find("records");
  if (records == j.end() || !records->is_array()) throw FormatError("manifest: missing records array");
  long index = 0;
  for (const auto& o : *records) {
    TargetRecord r;
    try {
      r.graphml_base = o.at("graphml_base").get<std::string>();
      r.graphml_alt = o.at("graphml_alt").get<std::string>();
      r.img_base = o.at("img_base").get<std::string>();
      r.img_alt = o.at("img_alt").get<std::string>();
      r.img_diff = o.at("img_diff").get<std::string>();
      r.masks = o.at("masks").get<std::vector<std::string>>();
      r.boxes = o.at("boxes").get<std::vector<std::array<int, 4>>>();
      r.labels = o.at("labels").get<std::vector<int>>();
      const auto kind = parse_diff_kind(o.at("kind").get<std::string>());
      if (!kind) throw FormatError("unknown kind", index);
      r.kind = *kind;
      r.seed = o.at("seed").get<std::uint64_t>();
    } catch (const ordered_json::exception& e) {
      throw FormatError(e.what(), index);
    }
    m.records.push_back(std::move(r));
    ++index;
  }
  return m;
}

void write_manifest(const DatasetManifest& m, const fs::path& dir) { write_text(dir / kManifestName, manifest_json(m)); }

DatasetManifest read_manifest(const fs::path& dir) { return parse_manifest(read_text(dir / kManifestName)); }

DatasetManifest write_dataset(const Dataset& ds, const fs::path& dir) {
  DatasetManifest m;
  m.format_version = ds.format_version;
  m.config = ds.config;
  std::set<std::string> written;
  for (const RecordData& r : ds.records) {
    const bool shared = written.insert(r.meta.graphml_base).second;
    write_record_files(r, dir, shared);
    m.records.push_back(r.meta);
  }
  write_manifest(m, dir);
  return m;
}

Dataset read_dataset(const fs::path& dir) {
  const DatasetManifest m = read_manifest(dir);
  const PipelineConfig cfg = config_from(m.config);
  Dataset ds;
  ds.format_version = m.format_version;
  ds.config = m.config;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    RecordData r;
    try {
      r = load_record(dir, m.records[i]);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), static_cast<long>(i));
    }
    const auto issues = check_record(r, static_cast<long>(i), limits_from(cfg), cfg.style);
    if (!issues.empty()) throw InvariantViolation("record " + std::to_string(i) + ": " + issues.front().detail);
    ds.records.push_back(std::move(r));
  }
  return ds;
}

std::vector<DatasetIssue> check_record(const RecordData& r, long index, const PairLimits& limits,
                                       const RenderStyle& style) {
  std::vector<DatasetIssue> out;
  auto issue = [&](std::string detail) { out.push_back({index, std::move(detail)}); };
  const TargetRecord& m = r.meta;

  if (m.masks.size() != m.boxes.size() || m.masks.size() != m.labels.size())
    issue("masks, boxes and labels differ in length");
  if (r.masks.size() != m.masks.size()) issue("loaded mask count differs from the manifest");
  if (r.pair.seed != m.seed) issue("pair seed differs from the manifest");

  for (const Violation& v : validate_pair(r.pair, limits))
    issue(std::string(to_string(v.kind)) + ": " + v.detail);

  for (std::size_t i = 0; i < m.labels.size(); ++i)
    if (m.labels[i] != 0 && m.labels[i] != 1) issue("label " + std::to_string(i) + " is not 0 or 1");

  BitImage seen(style.width, style.height);
  for (std::size_t i = 0; i < r.masks.size(); ++i) {
    const BitImage& mask = r.masks[i];
    if (mask.width() != style.width || mask.height() != style.height) {
      issue("mask " + std::to_string(i) + " has the wrong size");
      continue;
    }
    const PixelBox b = mask.bounds();
    if (b.empty()) issue("mask " + std::to_string(i) + " is empty");
    if (i < m.boxes.size() && std::array<int, 4>{b.x0, b.y0, b.x1, b.y1} != m.boxes[i])
      issue("box " + std::to_string(i) + " is not the tight bound of its mask");
    for (int y = b.y0; y <= b.y1; ++y)
      for (int x = b.x0; x <= b.x1; ++x)
        if (mask.at(x, y)) {
          if (seen.at(x, y)) issue("masks overlap at (" + std::to_string(x) + "," + std::to_string(y) + ")");
          seen.set(x, y);
        }
  }

  for (const Image* img : {&r.img_base, &r.img_alt, &r.img_diff})
    if (img->width() != style.width || img->height() != style.height) issue("image has the wrong size");
  if (!out.empty()) return out;

  // Masks against the drawn GT difference.
  const DiffSet gt = gt_diff(r.pair);
  const BitImage gt_mask = diff_mask(r.pair.alternative, gt, style);
  for (int y = 0; y < style.height; ++y)
    for (int x = 0; x < style.width; ++x) {
      if (seen.at(x, y) && !gt_mask.at(x, y)) {
        issue("mask pixel outside the GT difference");
        return out;
      }
      if (m.kind == DiffKind::GT && gt_mask.at(x, y) && !seen.at(x, y)) {
        issue("GT masks miss a difference pixel");
        return out;
      }
    }

  if (r.img_base != render_graph(r.pair.base, style)) issue("base image does not match the base graph");
  if (r.img_alt != render_graph(r.pair.alternative, style)) issue("alternative image does not match the alternative graph");
  for (int y = 0; y < style.height; ++y)
    for (int x = 0; x < style.width; ++x) {
      const Rgb c = r.img_diff.at(x, y);
      if (c == style.diff_color && !seen.at(x, y)) {
        issue("diff image highlights a pixel outside every mask");
        return out;
      }
      if (c != style.diff_color && c != style.element_color && c != style.background) {
        issue("diff image holds a foreign color");
        return out;
      }
    }
  return out;
}

std::vector<DatasetIssue> validate_dataset(const fs::path& dir) {
  const DatasetManifest m = read_manifest(dir);
  PipelineConfig cfg;
  try {
    cfg = config_from(m.config);
  } catch (const InvalidConfig& e) {
    return {{-1, std::string("config snapshot: ") + e.what()}};
  }
  std::vector<DatasetIssue> out;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const long index = static_cast<long>(i);
    RecordData r;
    try {
      r = load_record(dir, m.records[i]);
    } catch (const Error& e) {
      out.push_back({index, e.what()});
      continue;
    }
    auto issues = check_record(r, index, limits_from(cfg), cfg.style);
    out.insert(out.end(), issues.begin(), issues.end());
  }
  return out;
}

}  // namespace dagdiff
