#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ontokit/hierarchy_kind.hpp"
#include "ontokit/knowledge_core.hpp"

namespace ontokit {

// The expert's verdict on one annotation candidate.
struct Decision {
  enum class Type { Accept, NewConcept, Skip };

  Type type = Type::Skip;
  Gid gid;                       // Accept
  bool override_hits = false;    // Accept a GID that search did not return
  std::string gloss;             // NewConcept

  static Decision accept(Gid gid, bool override_hits = false) {
    return {Type::Accept, gid, override_hits, {}};
  }
  static Decision new_concept(std::string gloss) {
    return {Type::NewConcept, {}, false, std::move(gloss)};
  }
  static Decision skip() { return {}; }

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Headless stand-in for the expert. Text form, one entry per line:
//
//   class:Person = accept 12
//   class:Sauna = accept 40 override
//   class:Malga = new a malga is a mountain hut ...
//   object-property:hasPart = skip
//
// Labels are matched after case folding and whitespace normalization.
class DecisionScript {
 public:
  static DecisionScript parse(std::string_view text);
  std::string format() const;

  void set(HierarchyKind kind, std::string_view label, Decision decision);
  const Decision* find(HierarchyKind kind, std::string_view label) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  struct Entry {
    std::string label;  // as written
    Decision decision;
  };
  using Key = std::pair<HierarchyKind, std::string>;
  const std::map<Key, Entry>& entries() const noexcept { return entries_; }

 private:
  std::map<Key, Entry> entries_;
};

std::string format_decision(const Decision& decision);
// Parses the right-hand side of a script line ("accept 12", "new ...", "skip").
std::optional<Decision> parse_decision(std::string_view text);

}  // namespace ontokit
