#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dagdiff/graph.hpp"
#include "dagdiff/image.hpp"
#include "dagdiff/rng.hpp"

namespace dagdiff {

enum class Factor { Symmetry, Shape, EdgeCrossing, Depth, Density, WhiteSpace };
enum class GraphSide { Base, Alternative, Pair };

std::string_view to_string(Factor f);
std::string_view to_string(GraphSide s);

/// Axis-aligned box in pixel coordinates. Pixel (i, j) lies in the box when
/// floor(x_min) <= i <= floor(x_max) and likewise for y.
struct Box {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  [[nodiscard]] double width() const { return x_max - x_min; }
  [[nodiscard]] double height() const { return y_max - y_min; }
  /// Pixel index range covered, clipped to a width x height canvas.
  /// Empty when x1 < x0 or y1 < y0.
  [[nodiscard]] PixelBox pixels(int width, int height) const;
  friend constexpr bool operator==(const Box&, const Box&) = default;
};

Box box_from_pixels(const PixelBox& p);

struct RoiBox {
  bool is_supportive = true;
  Box box;
  Factor factor = Factor::Symmetry;
  GraphSide side = GraphSide::Pair;
  friend constexpr bool operator==(const RoiBox&, const RoiBox&) = default;
};

/// Foveal field-of-view model: visual angle, viewing distance and screen scale.
struct FovGeometry {
  double omega_deg = 6.0;
  double f_mm = 700.0;
  double px_per_mm = 3.5;
  /// Round the diameter to whole millimetres before deriving the box, so the
  /// default geometry gives d = 73 mm and a 51.62 mm side.
  bool whole_mm_diameter = true;
};

void check(const FovGeometry& g);

/// Diameter of the sharp-vision disc on screen, d = 2 f tan(omega / 2).
double fov_diameter_mm(const FovGeometry& g);
/// Side of the square inscribed in that disc, d / sqrt(2).
double fov_side_mm(const FovGeometry& g);
double fov_side_px(const FovGeometry& g);
/// Square of side fov_side_px centered on the focus.
Box fov_box(const FovGeometry& g, Point focus);

struct FactorThresholds {
  double density_sparse = 0.10;  // ink ratio at or below: supportive
  double density_dense = 0.40;   // ink ratio above: hindering
  double crossing_supportive = 0.70;
  double hull_gap_ratio = 0.30;  // (convex - concave) / convex
  double white_ratio = 0.30;     // white share of a kernel window
  int kernel = 3;
  int density_stride_div = 4;
  double symmetry_tolerance = 2.0;
};

void check(const FactorThresholds& t);

/// Mirror symmetry about the vertical line through the mean x of the nodes.
/// Each node must have a partner within `tol` px of its reflection, and the
/// node mapping must carry edges onto edges.
bool mirror_symmetric(const Dag& g, double tol);

/// Whole-graph box when the graph is mirror symmetric, else nothing.
std::vector<RoiBox> symmetry_rois(const Dag& g, GraphSide side, double tol = 2.0);

/// Boxes of the 8-connected regions where the two concave hulls disagree.
/// Throws DegenerateHull when either graph has no 2-D hull.
std::vector<RoiBox> shape_rois(const DagPair& pair, int width, int height);

/// One field-of-view box per edge crossing, supportive with the configured
/// probability. Draws exactly one number from `rng` per crossing.
std::vector<RoiBox> crossing_rois(const Dag& g, GraphSide side, const FovGeometry& geom, Rng& rng,
                                  double p_supportive = 0.70);

/// Box around the G2 nodes below the deepest G1 layer together with the
/// endpoints of their incident edges. Empty unless G2 is deeper.
std::vector<RoiBox> depth_rois(const DagPair& pair);

/// Field-of-view window slid over the ink image at stride side / div.
std::vector<RoiBox> density_rois(const BitImage& ink, const FovGeometry& geom, const FactorThresholds& t = {});

/// White space inside one graph's concave hull. Throws DegenerateHull.
std::vector<RoiBox> whitespace_rois(const Dag& g, const BitImage& ink, GraphSide side, const FactorThresholds& t = {});

/// True when the box shares at least one pixel with the canvas.
bool intersects_canvas(const Box& b, int width, int height);

}  // namespace dagdiff
