#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dagdiff/diffset.hpp"
#include "dagdiff/graph.hpp"
#include "dagdiff/image.hpp"
#include "dagdiff/render.hpp"

namespace dagdiff {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kManifestName = "targets.json";

/// One dataset item. Paths are relative to the manifest directory; boxes are
/// pixel-inclusive [x0, y0, x1, y1].
struct TargetRecord {
  std::string graphml_base;
  std::string graphml_alt;
  std::string img_base;
  std::string img_alt;
  std::string img_diff;
  std::vector<std::string> masks;
  std::vector<std::array<int, 4>> boxes;
  std::vector<int> labels;
  DiffKind kind = DiffKind::GT;
  std::uint64_t seed = 0;
  friend bool operator==(const TargetRecord&, const TargetRecord&) = default;
};

struct DatasetManifest {
  int format_version = kFormatVersion;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<TargetRecord> records;
  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

struct Instance {
  BitImage mask;
  PixelBox box;
  int label = 1;
  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One instance per 8-connected component of the union of the diff's
/// element rasters drawn in G2. Components are ordered by first pixel in
/// raster scan order.
std::vector<Instance> instance_masks(const DagPair& pair, const DiffSet& diff, const RenderStyle& style);

/// A record with every referenced file held in memory.
struct RecordData {
  TargetRecord meta;
  DagPair pair;
  Image img_base;
  Image img_alt;
  Image img_diff;
  std::vector<BitImage> masks;
  friend bool operator==(const RecordData&, const RecordData&) = default;
};

struct Dataset {
  int format_version = kFormatVersion;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<RecordData> records;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Relative file names used for pair `index`.
struct PairPaths {
  std::string graphml_base, graphml_alt, img_base, img_alt;
  [[nodiscard]] std::string img_diff(DiffKind kind) const;
  [[nodiscard]] std::string mask(DiffKind kind, std::size_t instance) const;
  std::size_t index = 0;
};
PairPaths pair_paths(std::size_t index);

/// Builds the in-memory record for one diff of a laid-out pair.
RecordData make_record(const DagPair& pair, const DiffSet& diff, std::size_t pair_index, const RenderStyle& style);
/// Same, reusing already rendered base and alternative images.
RecordData make_record(const DagPair& pair, const DiffSet& diff, std::size_t pair_index, const RenderStyle& style,
                       const Image& img_base, const Image& img_alt);

/// Writes the files a record references. Shared pair files (graphs, base
/// and alternative images) are skipped when `shared` is false.
/// Throws IoError naming the failing path.
void write_record_files(const RecordData& rec, const std::filesystem::path& dir, bool shared = true);

std::string manifest_json(const DatasetManifest& m);
DatasetManifest parse_manifest(std::string_view text);
/// Written last; it is the commit point of a dataset directory.
void write_manifest(const DatasetManifest& m, const std::filesystem::path& dir);
/// Throws IoError, or FormatError carrying the record index.
DatasetManifest read_manifest(const std::filesystem::path& dir);

/// Writes all files and the manifest. Files shared by several records are
/// written once.
DatasetManifest write_dataset(const Dataset& ds, const std::filesystem::path& dir);

/// Loads every record and checks the record invariants; throws
/// InvariantViolation on the first broken one.
Dataset read_dataset(const std::filesystem::path& dir);

struct DatasetIssue {
  long record_index = -1;
  std::string detail;
};

/// Checks one loaded record: mask/box/label cardinality, mask size, box
/// tightness, disjoint masks, pair laws under `limits` and consistency of
/// the masks with the GT difference drawn by `style`.
std::vector<DatasetIssue> check_record(const RecordData& rec, long index, const PairLimits& limits,
                                       const RenderStyle& style);

/// Streams through a dataset directory and reports every violation.
/// Limits and style come from the manifest's config snapshot.
std::vector<DatasetIssue> validate_dataset(const std::filesystem::path& dir);

}  // namespace dagdiff
