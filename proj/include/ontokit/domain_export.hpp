#pragma once

#include <string>
#include <string_view>

#include "ontokit/etg.hpp"
#include "ontokit/turtle.hpp"

namespace ontokit {

// Annotation vocabulary of exported models:
//   tk:gid                    core GID of a node (xsd:integer)
//   tk:hierarchy              "object", "function" or "action"
//   tk:groundedIn             tk:Object, tk:Function, tk:Producer, ...
//   tk:foundationalRelation   tk:ObjectFunction, ...
//   tk:contextDomain, tk:spatialScope, tk:temporalStart, tk:temporalEnd
inline constexpr std::string_view kOntokitVocab = "urn:ontokit:vocab#";

struct ExportOptions {
  // Namespace of minted IRIs; derived from the context domain when empty.
  std::string base;
  std::string language = "en";
};

// Nodes become owl:Class with rdfs:subClassOf for hierarchy edges; relations
// and object attributions become owl:ObjectProperty, data attributions
// owl:DatatypeProperty.
rdf::Document export_domain_model(const GroundedDomainModel& model,
                                  const ExportOptions& options = {});
std::string export_turtle(const GroundedDomainModel& model, const ExportOptions& options = {});

// "tourist facilities" -> "urn:ontokit:model:tourist-facilities#"
std::string default_model_namespace(std::string_view domain);

}  // namespace ontokit
