#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/hierarchy_kind.hpp"
#include "ontokit/turtle.hpp"

namespace ontokit {

// One concept of an informal (not yet GID-annotated) ontology.
struct ConceptCandidate {
  std::string iri;
  std::string label;
  std::string language;
  std::map<std::string, std::string> labels;  // language tag ("" = none) -> label
  std::string gloss;
  HierarchyKind kind = HierarchyKind::Class;
  std::vector<std::string> parents;  // IRIs, ordered by parent label, then IRI
  std::vector<std::string> domains;
  std::vector<std::string> ranges;

  friend bool operator==(const ConceptCandidate&, const ConceptCandidate&) = default;
};

class Hierarchy {
 public:
  explicit Hierarchy(HierarchyKind kind = HierarchyKind::Class) : kind_(kind) {}

  HierarchyKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  bool contains(std::string_view iri) const { return nodes_.find(iri) != nodes_.end(); }
  const ConceptCandidate& node(std::string_view iri) const;
  const std::map<std::string, ConceptCandidate, std::less<>>& nodes() const noexcept {
    return nodes_;
  }
  std::size_t edge_count() const;
  std::vector<std::string> roots() const;
  std::vector<std::string> children(std::string_view iri) const;

  // Adds or replaces a node; its kind is forced to the hierarchy kind.
  void insert(ConceptCandidate candidate);
  // Throws Error(CyclicHierarchy) listing every IRI on a cycle.
  void check_acyclic() const;

 private:
  HierarchyKind kind_;
  std::map<std::string, ConceptCandidate, std::less<>> nodes_;
};

struct InformalOntology {
  std::string iri;
  Hierarchy classes{HierarchyKind::Class};
  Hierarchy object_properties{HierarchyKind::ObjectProperty};
  Hierarchy data_properties{HierarchyKind::DataProperty};
  std::set<std::string> imports;
  rdf::Document document;

  const Hierarchy& hierarchy(HierarchyKind kind) const;
  Hierarchy& hierarchy(HierarchyKind kind);
  std::size_t size() const {
    return classes.size() + object_properties.size() + data_properties.size();
  }
};

struct IngestOptions {
  // Preferred label language; falls back to untagged, then the smallest tag,
  // then the IRI local name.
  std::string language = "en";
};

InformalOntology parse_ontology(std::string_view document, std::string_view base_iri,
                                const IngestOptions& options = {});
InformalOntology ontology_from_document(rdf::Document document,
                                        const IngestOptions& options = {});

// Parents before children; siblings (and otherwise unordered nodes) by label,
// then IRI.
std::vector<ConceptCandidate> iterate_top_down(const Hierarchy& hierarchy);
std::vector<ConceptCandidate> iterate_top_down(const InformalOntology& ontology,
                                               HierarchyKind kind);

}  // namespace ontokit
