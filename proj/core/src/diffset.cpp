#include "dagdiff/diffset.hpp"

#include <algorithm>

namespace dagdiff {

std::string_view to_string(DiffKind k) {
  switch (k) {
    case DiffKind::GT: return "gt";
    case DiffKind::RandomGT: return "random_gt";
    case DiffKind::HumanLike: return "human_like";
  }
  return "?";
}

std::optional<DiffKind> parse_diff_kind(std::string_view s) {
  for (DiffKind k : {DiffKind::GT, DiffKind::RandomGT, DiffKind::HumanLike})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

bool DiffSet::contains(const Element& el) const {
  if (const auto* n = std::get_if<NodeId>(&el)) return nodes.count(*n) > 0;
  return edges.count(std::get<Edge>(el)) > 0;
}

bool DiffSet::subset_of(const DiffSet& other) const {
  return std::includes(other.nodes.begin(), other.nodes.end(), nodes.begin(), nodes.end()) &&
         std::includes(other.edges.begin(), other.edges.end(), edges.begin(), edges.end());
}

}  // namespace dagdiff
