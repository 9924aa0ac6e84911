#include "dagdiff/config.hpp"

#include <fstream>
#include <set>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class T>
void read_key(const json& section, std::string_view sect_name, const char* key, T& out) {
  auto it = section.find(key);
  if (it == section.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw InvalidConfig(std::string(sect_name) + "." + key + ": wrong type");
  }
}

void reject_unknown(const json& section, std::string_view name, std::set<std::string_view> known) {
  if (!section.is_object()) throw InvalidConfig(std::string(name) + ": expected an object");
  for (const auto& [key, _] : section.items())
    if (!known.count(key)) throw InvalidConfig(std::string(name) + ": unknown key '" + key + "'");
}

ordered_json color(Rgb c) { return ordered_json::array({c.r, c.g, c.b}); }

Rgb parse_color(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw InvalidConfig(where + ": expected [r, g, b]");
  Rgb c;
  std::uint8_t* ch[] = {&c.r, &c.g, &c.b};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 0 || j[i].get<int>() > 255)
      throw InvalidConfig(where + ": channel out of range");
    *ch[i] = static_cast<std::uint8_t>(j[i].get<int>());
  }
  return c;
}

}  // namespace

void check(const PipelineConfig& cfg) {
  check(cfg.gen);
  check(cfg.layout);
  check(cfg.style);
  check(cfg.fov);
  check(cfg.thresholds);
  if (cfg.layout.canvas_width != cfg.style.width || cfg.layout.canvas_height != cfg.style.height)
    throw InvalidConfig("layout canvas and image size differ");
}

ordered_json to_json(const PipelineConfig& c) {
  ordered_json j;
  j["generator"] = {{"node_min", c.gen.node_min},
                    {"node_max", c.gen.node_max},
                    {"density_class", std::string(to_string(c.gen.density_class))},
                    {"n_pairs", c.gen.n_pairs},
                    {"changes_min", c.gen.changes_min},
                    {"changes_max", c.gen.changes_max},
                    {"seed", c.gen.seed},
                    {"attempt_budget", c.gen.attempt_budget},
                    {"pool_size", c.gen.pool_size},
                    {"depth_band_samples", c.gen.depth_band_samples}};
  j["layout"] = {{"canvas_width", c.layout.canvas_width}, {"canvas_height", c.layout.canvas_height},
                 {"margin", c.layout.margin},             {"layer_gap", c.layout.layer_gap},
                 {"node_gap", c.layout.node_gap},         {"min_layer_gap", c.layout.min_layer_gap},
                 {"min_node_gap", c.layout.min_node_gap}, {"sweeps", c.layout.sweeps}};
  j["render"] = {{"width", c.style.width},
                 {"height", c.style.height},
                 {"node_radius", c.style.node_radius},
                 {"edge_width", c.style.edge_width},
                 {"arrow_length", c.style.arrow_length},
                 {"arrow_half_width", c.style.arrow_half_width},
                 {"element_color", color(c.style.element_color)},
                 {"diff_color", color(c.style.diff_color)},
                 {"background", color(c.style.background)}};
  j["fov"] = {{"omega_deg", c.fov.omega_deg}, {"f_mm", c.fov.f_mm}, {"px_per_mm", c.fov.px_per_mm},
              {"whole_mm_diameter", c.fov.whole_mm_diameter}};
  j["thresholds"] = {{"density_sparse", c.thresholds.density_sparse},
                     {"density_dense", c.thresholds.density_dense},
                     {"crossing_supportive", c.thresholds.crossing_supportive},
                     {"hull_gap_ratio", c.thresholds.hull_gap_ratio},
                     {"white_ratio", c.thresholds.white_ratio},
                     {"kernel", c.thresholds.kernel},
                     {"density_stride_div", c.thresholds.density_stride_div},
                     {"symmetry_tolerance", c.thresholds.symmetry_tolerance}};
  return j;
}

PipelineConfig apply_json(const json& j, PipelineConfig c) {
  reject_unknown(j, "config", {"generator", "layout", "render", "fov", "thresholds"});
  if (auto it = j.find("generator"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "generator",
                   {"node_min", "node_max", "density_class", "n_pairs", "changes_min", "changes_max", "seed",
                    "attempt_budget", "pool_size", "depth_band_samples"});
    read_key(s, "generator", "node_min", c.gen.node_min);
    read_key(s, "generator", "node_max", c.gen.node_max);
    if (auto d = s.find("density_class"); d != s.end()) {
      const auto parsed = d->is_string() ? parse_density_class(d->get<std::string>()) : std::nullopt;
      if (!parsed) throw InvalidConfig("generator.density_class: expected \"tree\" or \"sparse\"");
      c.gen.density_class = *parsed;
    }
    read_key(s, "generator", "n_pairs", c.gen.n_pairs);
    read_key(s, "generator", "changes_min", c.gen.changes_min);
    read_key(s, "generator", "changes_max", c.gen.changes_max);
    read_key(s, "generator", "seed", c.gen.seed);
    read_key(s, "generator", "attempt_budget", c.gen.attempt_budget);
    read_key(s, "generator", "pool_size", c.gen.pool_size);
    read_key(s, "generator", "depth_band_samples", c.gen.depth_band_samples);
  }
  if (auto it = j.find("layout"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "layout",
                   {"canvas_width", "canvas_height", "margin", "layer_gap", "node_gap", "min_layer_gap",
                    "min_node_gap", "sweeps"});
    read_key(s, "layout", "canvas_width", c.layout.canvas_width);
    read_key(s, "layout", "canvas_height", c.layout.canvas_height);
    read_key(s, "layout", "margin", c.layout.margin);
    read_key(s, "layout", "layer_gap", c.layout.layer_gap);
    read_key(s, "layout", "node_gap", c.layout.node_gap);
    read_key(s, "layout", "min_layer_gap", c.layout.min_layer_gap);
    read_key(s, "layout", "min_node_gap", c.layout.min_node_gap);
    read_key(s, "layout", "sweeps", c.layout.sweeps);
  }
  if (auto it = j.find("render"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "render",
                   {"width", "height", "node_radius", "edge_width", "arrow_length", "arrow_half_width",
                    "element_color", "diff_color", "background"});
    read_key(s, "render", "width", c.style.width);
    read_key(s, "render", "height", c.style.height);
    read_key(s, "render", "node_radius", c.style.node_radius);
    read_key(s, "render", "edge_width", c.style.edge_width);
    read_key(s, "render", "arrow_length", c.style.arrow_length);
    read_key(s, "render", "arrow_half_width", c.style.arrow_half_width);
    if (s.contains("element_color")) c.style.element_color = parse_color(s["element_color"], "render.element_color");
    if (s.contains("diff_color")) c.style.diff_color = parse_color(s["diff_color"], "render.diff_color");
    if (s.contains("background")) c.style.background = parse_color(s["background"], "render.background");
  }
  if (auto it = j.find("fov"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "fov", {"omega_deg", "f_mm", "px_per_mm", "whole_mm_diameter"});
    read_key(s, "fov", "omega_deg", c.fov.omega_deg);
    read_key(s, "fov", "f_mm", c.fov.f_mm);
    read_key(s, "fov", "px_per_mm", c.fov.px_per_mm);
    read_key(s, "fov", "whole_mm_diameter", c.fov.whole_mm_diameter);
  }
  if (auto it = j.find("thresholds"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "thresholds",
                   {"density_sparse", "density_dense", "crossing_supportive", "hull_gap_ratio", "white_ratio",
                    "kernel", "density_stride_div", "symmetry_tolerance"});
    read_key(s, "thresholds", "density_sparse", c.thresholds.density_sparse);
    read_key(s, "thresholds", "density_dense", c.thresholds.density_dense);
    read_key(s, "thresholds", "crossing_supportive", c.thresholds.crossing_supportive);
    read_key(s, "thresholds", "hull_gap_ratio", c.thresholds.hull_gap_ratio);
    read_key(s, "thresholds", "white_ratio", c.thresholds.white_ratio);
    read_key(s, "thresholds", "kernel", c.thresholds.kernel);
    read_key(s, "thresholds", "density_stride_div", c.thresholds.density_stride_div);
    read_key(s, "thresholds", "symmetry_tolerance", c.thresholds.symmetry_tolerance);
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open config");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
  return apply_json(j);
}

}  // namespace dagdiff
