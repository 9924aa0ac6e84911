#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dagdiff/graph.hpp"

namespace dagdiff {

/// GraphML with node data keys `label` (int), `x`, `y` (double, px) and
/// plain `source`/`target` edges. Output is byte-stable and coordinates
/// use the shortest round-trip decimal form.
std::string write_graphml(const Dag& g);

/// Throws FormatError on malformed documents.
Dag read_graphml(std::string_view xml);

void save_graphml(const Dag& g, const std::filesystem::path& path);
Dag load_graphml(const std::filesystem::path& path);

}  // namespace dagdiff
