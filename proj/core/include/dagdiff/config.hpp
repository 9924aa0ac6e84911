#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "dagdiff/factors.hpp"
#include "dagdiff/generator.hpp"
#include "dagdiff/layout.hpp"
#include "dagdiff/render.hpp"

namespace dagdiff {

/// Everything that determines a generated dataset.
struct PipelineConfig {
  GenConfig gen;
  LayoutConfig layout;
  RenderStyle style;
  FovGeometry fov;
  FactorThresholds thresholds;
};

/// Throws InvalidConfig.
void check(const PipelineConfig& cfg);

/// Stable key order; doubles in shortest round-trip form.
nlohmann::ordered_json to_json(const PipelineConfig& cfg);

/// Applies the keys present in `j` on top of `base`. Unknown sections or
/// keys and mistyped values throw InvalidConfig.
PipelineConfig apply_json(const nlohmann::json& j, PipelineConfig base = {});

/// Reads a JSON config file on top of the defaults. Throws IoError or
/// InvalidConfig.
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace dagdiff
