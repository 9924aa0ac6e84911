#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include <unistd.h>

#include "dagdiff/config.hpp"
#include "dagdiff/dataset.hpp"
#include "dagdiff/errors.hpp"
#include "dagdiff/graphml.hpp"
#include "dagdiff/pipeline.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dagdiff;
using fixture::graph;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dagdiff_test_" + name + "_" + std::to_string(::getpid()));
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

PipelineConfig small_cfg(DensityClass c, int n) {
  PipelineConfig cfg;
  cfg.gen.density_class = c;
  cfg.gen.n_pairs = n;
  cfg.gen.seed = 5;
  cfg.gen.pool_size = 20;
  cfg.gen.depth_band_samples = 40;
  return cfg;
}

const RenderStyle kStyle;

}  // namespace

TEST(InstanceMasks, SingleEdge) {
  const Dag g1 = graph({{1, 400, 100}, {2, 300, 300}, {3, 500, 300}}, {{1, 2}, {1, 3}});
  Dag g2 = g1;
  g2.add_edge(NodeId{2}, NodeId{3});
  DiffSet d;
  d.edges.insert(Edge{NodeId{2}, NodeId{3}});
  const auto inst = instance_masks({g1, g2, 0}, d, kStyle);
  ASSERT_EQ(inst.size(), 1u);
  BitImage want(800, 800);
  for (const auto& [x, y] : rasterize_element(g2, Edge{NodeId{2}, NodeId{3}}, kStyle).pixels) want.set(x, y);
  EXPECT_EQ(inst[0].mask, want);
  EXPECT_EQ(inst[0].box, want.bounds());
  EXPECT_EQ(inst[0].label, 1);
}

TEST(InstanceMasks, TouchingNodeAndEdgeMerge) {
  const Dag g1 = graph({{1, 400, 100}, {2, 300, 300}}, {{1, 2}});
  Dag g2 = g1;
  g2.add_node(NodeId{3}, Point{500, 300});
  g2.add_edge(NodeId{1}, NodeId{3});
  const DiffSet d = gt_diff({g1, g2, 0});
  const auto inst = instance_masks({g1, g2, 0}, d, kStyle);
  int n = 0;
  oracle::flood_labels(diff_mask(g2, d, kStyle), n);
  EXPECT_EQ(n, 1);
  EXPECT_EQ(inst.size(), 1u);
}

TEST(InstanceMasks, DisjointEdgesSplit) {
  const Dag g1 = graph({{1, 400, 100}, {2, 200, 300}, {3, 600, 300}, {4, 200, 500}, {5, 600, 500}},
                       {{1, 2}, {1, 3}, {2, 4}, {3, 5}});
  Dag g2 = g1;
  g2.add_edge(NodeId{1}, NodeId{4});
  g2.add_edge(NodeId{1}, NodeId{5});
  DiffSet d;
  d.edges.insert(Edge{NodeId{2}, NodeId{4}});
  d.edges.insert(Edge{NodeId{3}, NodeId{5}});
  const auto inst = instance_masks({g1, g2, 0}, d, kStyle);
  ASSERT_EQ(inst.size(), 2u);
  for (int y = 0; y < 800; ++y)
    for (int x = 0; x < 800; ++x) EXPECT_FALSE(inst[0].mask.at(x, y) && inst[1].mask.at(x, y));
}

TEST(Dataset, RoundTripAndLaws) {
  const fs::path dir = scratch("roundtrip");
  const PipelineConfig cfg = small_cfg(DensityClass::Sparse, 6);
  generate_dataset(cfg, dir);
  const Dataset ds = read_dataset(dir);
  ASSERT_EQ(ds.records.size(), 18u);

  for (const RecordData& r : ds.records) {
    ASSERT_EQ(r.masks.size(), r.meta.boxes.size());
    ASSERT_EQ(r.masks.size(), r.meta.labels.size());
    BitImage uni(800, 800);
    for (std::size_t k = 0; k < r.masks.size(); ++k) {
      const PixelBox b = r.masks[k].bounds();
      EXPECT_EQ((std::array<int, 4>{b.x0, b.y0, b.x1, b.y1}), r.meta.boxes[k]);
      for (int y = 0; y < 800; ++y)
        for (int x = 0; x < 800; ++x)
          if (r.masks[k].at(x, y)) uni.set(x, y);
    }
    if (r.meta.kind == DiffKind::GT) {
      EXPECT_EQ(uni, diff_mask(r.pair.alternative, gt_diff(r.pair), kStyle));
    }
  }

  const fs::path again = scratch("roundtrip_again");
  write_dataset(ds, again);
  EXPECT_EQ(read_dataset(again), ds);
  EXPECT_EQ(tree_bytes(again), tree_bytes(dir));
  EXPECT_TRUE(validate_dataset(dir).empty());
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST(Dataset, DeterministicAcrossJobs) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const PipelineConfig cfg = small_cfg(DensityClass::TreeLike, 5);
  generate_dataset(cfg, a, 1);
  generate_dataset(cfg, b, 3);
  EXPECT_EQ(tree_bytes(a), tree_bytes(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Dataset, ValidateCatchesCorruption) {
  const fs::path dir = scratch("corrupt");
  generate_dataset(small_cfg(DensityClass::TreeLike, 3), dir);
  const DatasetManifest m = read_manifest(dir);
  const TargetRecord& victim = m.records[0];
  ASSERT_FALSE(victim.masks.empty());
  BitImage blank(800, 800);
  blank.set(0, 0);
  write_file(dir / victim.masks[0], encode_png(blank));
  const auto issues = validate_dataset(dir);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues[0].record_index, 0);
  EXPECT_THROW(read_dataset(dir), InvariantViolation);
  fs::remove_all(dir);
}

TEST(Manifest, ParseErrorsCarryIndex) {
  DatasetManifest m;
  TargetRecord r;
  r.graphml_base = "a";
  r.graphml_alt = "b";
  r.img_base = "c";
  r.img_alt = "d";
  r.img_diff = "e";
  m.records = {r, r};
  const std::string ok = manifest_json(m);
  EXPECT_EQ(parse_manifest(ok), m);
  std::string bad = ok;
  const auto pos = bad.rfind("\"kind\": \"gt\"");
  ASSERT_NE(pos, std::string::npos);
  bad.replace(pos, 12, "\"kind\": \"xx\"");
  try {
    parse_manifest(bad);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.record_index(), 1);
  }
  EXPECT_THROW(parse_manifest("{"), FormatError);
  EXPECT_THROW(read_manifest(fs::temp_directory_path() / "dagdiff_no_such_dir"), IoError);
}

TEST(GraphMl, RoundTrip) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    Dag g = oracle::random_dag(rng, rng.uniform_int(1, 12), 14);
    for (NodeId id : g.nodes()) g.set_position(id, Point{g.at(id).x / 3.0, g.at(id).y * 0.1});
    const std::string xml = write_graphml(g);
    EXPECT_EQ(read_graphml(xml), g);
    EXPECT_EQ(write_graphml(read_graphml(xml)), xml);
  }
  EXPECT_THROW(read_graphml("<graphml><graph>"), FormatError);
}
