#pragma once

#include <map>
#include <string>
#include <vector>

#include "ontokit/annotation.hpp"
#include "ontokit/decision_script.hpp"
#include "ontokit/er_model.hpp"

namespace ontokit {

// An ER model whose every node carries a committed GID.
class ETG {
 public:
  ETG() = default;
  // Throws ValidationFailed listing every node without a committed GID.
  explicit ETG(ERModel model);

  const ERModel& model() const noexcept { return model_; }
  friend bool operator==(const ETG&, const ETG&) = default;

 private:
  ERModel model_;
};

struct FormalizeOptions {
  std::string language = "en";
  std::string annotator;
  Gid default_parent;
};

struct FormalizeResult {
  ETG etg;
  AnnotationSheet sheet;
  std::map<Gid, Gid> mapping;  // placeholder -> GID
};

// Turns the model's nodes into class candidates ("class:<label>" keys in the
// script), annotates the unresolved ones against the core and imports the
// sheet. The core is left untouched when anything fails.
FormalizeResult formalize_to_etg(const ERModel& er, KnowledgeCore& core,
                                 const DecisionScript& decisions,
                                 const FormalizeOptions& options = {});

// The candidate ontology formalize_to_etg annotates.
InformalOntology er_ontology(const ERModel& er, const std::string& language);
std::string er_node_iri(std::string_view label);

struct GroundedDomainModel {
  ETG etg;  // relations carry their grounding
  std::map<std::string, ft::Distinction> nodes;
  std::vector<std::string> warnings;

  const ft::ThingContext& context() const { return etg.model().context; }
  friend bool operator==(const GroundedDomainModel&, const GroundedDomainModel&) = default;
};

ft::Distinction hierarchy_distinction(ConceptKind kind);

// Throws KindMismatch for a refinement outside the function hierarchy or to
// something other than Producer/Consumer, UngroundableRelation listing every
// relation whose endpoints fit no foundational relation.
GroundedDomainModel ground_to_ft(const ETG& etg,
                                 const std::map<std::string, ft::Distinction>& refinements);

// Empty for sound models; otherwise one line per relation whose grounding
// disagrees with its endpoints.
std::vector<std::string> grounding_violations(const GroundedDomainModel& model);

}  // namespace ontokit
