#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/cq_pipeline.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/teleology.hpp"

namespace ontokit {

using cq::ConceptKind;

inline constexpr std::array<ConceptKind, 3> kAllConceptKinds = {
    ConceptKind::Object, ConceptKind::Function, ConceptKind::Action};

// Nodes are identified by their normalized label.
struct ERNode {
  std::string label;
  Gid gid;  // null while unresolved
  ConceptKind kind = ConceptKind::Object;
  std::optional<std::string> parent;
  friend bool operator==(const ERNode&, const ERNode&) = default;
};

struct ERRelation {
  std::string name;
  std::string source;
  std::string target;
  std::optional<ft::RelationKind> grounding;
  friend bool operator==(const ERRelation&, const ERRelation&) = default;
};

// Object, function and action forests over one node set, plus the relations
// between them and the properties attributed to each node.
class ERModel {
 public:
  ft::ThingContext context;

  const std::map<std::string, ERNode>& nodes() const noexcept { return nodes_; }
  const ERNode* find(std::string_view label) const;
  const ERNode& node(std::string_view label) const;  // Usage error when absent
  bool contains(std::string_view label) const { return find(label) != nullptr; }
  std::size_t size() const noexcept { return nodes_.size(); }

  // Labels of one hierarchy in label order.
  std::vector<std::string> hierarchy(ConceptKind kind) const;
  std::size_t edge_count() const;

  // Throws KindMismatch when the label exists with another kind.
  ERNode& add_node(std::string_view label, ConceptKind kind);
  void set_gid(std::string_view label, Gid gid);
  // Throws DanglingRelation for unknown labels, KindMismatch across
  // hierarchies, CyclicHierarchy on a cycle, InvalidDecision for a second
  // parent.
  void set_parent(std::string_view child, std::string_view parent);
  // Throws DanglingRelation for unknown endpoints.
  void add_relation(ERRelation relation);
  void add_attribution(std::string_view label, cq::PropertySpec spec);

  const std::vector<ERRelation>& relations() const noexcept { return relations_; }
  std::vector<ERRelation>& relations() noexcept { return relations_; }
  const std::map<std::string, std::vector<cq::PropertySpec>>& attributions() const noexcept {
    return attributions_;
  }

  // Parents before children, siblings by label.
  std::vector<std::string> top_down() const;

  friend bool operator==(const ERModel&, const ERModel&) = default;

 private:
  ERNode& mutable_node(std::string_view label);

  std::map<std::string, ERNode> nodes_;
  std::vector<ERRelation> relations_;
  std::map<std::string, std::vector<cq::PropertySpec>> attributions_;
};

// Expert input for assembling the ER model. Text form, one entry per line:
//
//   node facility object
//   edge malga facility
//   relation offers malga accommodation
//   refine host producer
//   gid trento 12
struct StructureDecisions {
  std::map<std::string, ConceptKind> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // child, parent
  std::vector<ERRelation> relations;
  std::map<std::string, ft::Distinction> refinements;  // Producer or Consumer
  std::map<std::string, Gid> gids;

  static StructureDecisions parse(std::string_view text);
};

struct BuildOptions {
  std::string language = "en";
};

// Every classified label of the attributed CQs becomes a node. Labels the
// core knows (or the decisions pin) carry their GID at once.
ERModel build_er(const std::vector<cq::StagedCQ>& cqs, const ft::ThingContext& context,
                 const KnowledgeCore& core, const StructureDecisions& decisions,
                 const BuildOptions& options = {});

}  // namespace ontokit
