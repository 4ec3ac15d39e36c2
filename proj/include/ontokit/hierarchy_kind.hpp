#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ontokit {

// The three hierarchies an ontology contributes concepts from.
enum class HierarchyKind { Class, ObjectProperty, DataProperty };

inline constexpr std::array<HierarchyKind, 3> kAllHierarchyKinds = {
    HierarchyKind::Class, HierarchyKind::ObjectProperty,
    HierarchyKind::DataProperty};

constexpr std::string_view to_string(HierarchyKind kind) {
  switch (kind) {
    case HierarchyKind::Class: return "class";
    case HierarchyKind::ObjectProperty: return "object-property";
    case HierarchyKind::DataProperty: return "data-property";
  }
  return "class";
}

constexpr std::optional<HierarchyKind> parse_hierarchy_kind(std::string_view s) {
  for (auto kind : kAllHierarchyKinds)
    if (to_string(kind) == s) return kind;
  return std::nullopt;
}

}  // namespace ontokit
