#pragma once

#include <optional>
#include <set>
#include <string_view>
#include <variant>

#include "dagdiff/graph.hpp"

namespace dagdiff {

/// A single graph element: a node or an edge.
using Element = std::variant<NodeId, Edge>;

enum class DiffKind { GT, RandomGT, HumanLike };

std::string_view to_string(DiffKind k);
std::optional<DiffKind> parse_diff_kind(std::string_view s);

/// Set of node and edge differences, all elements of the alternative graph.
struct DiffSet {
  std::set<NodeId> nodes;
  std::set<Edge> edges;
  DiffKind kind = DiffKind::GT;

  [[nodiscard]] std::size_t size() const { return nodes.size() + edges.size(); }
  [[nodiscard]] bool empty() const { return nodes.empty() && edges.empty(); }
  [[nodiscard]] bool contains(const Element& el) const;
  /// Element-wise subset test; kinds are ignored.
  [[nodiscard]] bool subset_of(const DiffSet& other) const;

  friend bool operator==(const DiffSet&, const DiffSet&) = default;
};

}  // namespace dagdiff
