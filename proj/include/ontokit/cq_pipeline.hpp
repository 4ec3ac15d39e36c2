#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/knowledge_core.hpp"
#include "ontokit/text.hpp"

namespace ontokit::cq {

enum class Facet { CommonSpace, CommonTime, Core, Contextual };
enum class ConceptKind { Object, Function, Action };
enum class PropertyKind { ObjectProperty, DataProperty };
enum class Stage { Raw, Kernel, Analyzed, Classified, Attributed };
enum class AssignmentSource { Heuristic, Override };

std::string_view to_string(Facet f);
std::string_view to_string(ConceptKind k);
std::string_view to_string(PropertyKind k);
std::string_view to_string(Stage s);
std::string_view to_string(AssignmentSource s);
std::optional<Facet> parse_facet(std::string_view s);
std::optional<ConceptKind> parse_concept_kind(std::string_view s);
std::optional<PropertyKind> parse_property_kind(std::string_view s);
std::optional<Stage> parse_stage(std::string_view s);
std::optional<AssignmentSource> parse_assignment_source(std::string_view s);

// xsd datatype local names accepted as data-property ranges, with or without
// an "xsd:" prefix.
bool is_datatype_name(std::string_view name);

struct ConceptLabel {
  std::string text;
  bool latent = false;
  friend bool operator==(const ConceptLabel&, const ConceptLabel&) = default;
};

struct FacetAssignment {
  Facet facet = Facet::Core;
  AssignmentSource source = AssignmentSource::Heuristic;
  friend bool operator==(const FacetAssignment&, const FacetAssignment&) = default;
};

struct PropertySpec {
  std::string name;
  PropertyKind kind = PropertyKind::DataProperty;
  std::string range;  // concept label or datatype name
  friend auto operator<=>(const PropertySpec&, const PropertySpec&) = default;
};

// Throws Error(MalformedProperty) when the range does not fit the kind.
void check_property(const PropertySpec& spec);

struct StagedCQ {
  std::string id;
  std::string raw;
  Stage stage = Stage::Raw;
  std::vector<ConceptLabel> kernel;
  std::map<std::string, FacetAssignment> analyzed;
  std::map<std::string, ConceptKind> classified;
  std::map<std::string, std::vector<PropertySpec>> attributed;
  std::vector<std::string> warnings;

  friend bool operator==(const StagedCQ&, const StagedCQ&) = default;
};

// Empty when every later stage only names labels of the stage before and
// every completed stage maps every kernel label.
std::vector<std::string> monotonicity_violations(const StagedCQ& cq);

// Multiword terms merged from adjacent tokens before stopword filtering.
class PhraseLexicon {
 public:
  static PhraseLexicon parse(std::string_view text);
  void add(std::string_view phrase);
  // Greedy longest match, left to right.
  std::vector<std::string> merge(const std::vector<std::string>& tokens) const;
  bool empty() const noexcept { return phrases_.empty(); }

 private:
  std::vector<std::vector<std::string>> phrases_;  // longest first
};

StagedCQ to_kernel(StagedCQ cq, const StopwordList& stopwords, const PhraseLexicon& lexicon,
                   const std::vector<std::string>& latent);

struct AnalysisOptions {
  std::string language = "en";
  Gid space;  // root of the core's space subtree
  Gid time;   // root of the core's time subtree
  bool strict = false;
};

// Keys are normalized labels.
using FacetOverrides = std::map<std::string, Facet>;
using KindDecisions = std::map<std::string, ConceptKind>;
using PropertyDecisions = std::map<std::string, std::vector<PropertySpec>>;

StagedCQ to_analyzed(StagedCQ cq, const KnowledgeCore& core, const AnalysisOptions& options,
                     const FacetOverrides& overrides);
StagedCQ to_classified(StagedCQ cq, const KindDecisions& decisions);
// `label_known` decides whether an object-property range names a concept of
// the CQ set or the core; unknown ranges produce a warning.
StagedCQ to_attributed(StagedCQ cq, const PropertyDecisions& decisions,
                       const std::function<bool(std::string_view)>& label_known);

struct CompetencyQuestion {
  std::string id;
  std::string text;
};

// One CQ per line as "<id>: <question>"; '#' comments.
std::vector<CompetencyQuestion> parse_cq_file(std::string_view text);

// Per-stage expert input. Every file in a decision directory is optional:
//   latent.txt      CQ1: facility, tourist
//   facets.txt      malga = contextual
//   kinds.txt       malga = object
//   properties.txt  malga: locatedIn object-property trento
//   phrases.txt     tourist facility
//   stopwords.txt   replaces the shipped stopword list
struct CqDecisions {
  std::map<std::string, std::vector<std::string>> latent;  // CQ id -> labels
  FacetOverrides facets;
  KindDecisions kinds;
  PropertyDecisions properties;
  PhraseLexicon phrases;
  std::optional<StopwordList> stopwords;

  static CqDecisions load(const std::filesystem::path& directory);
};

std::map<std::string, std::vector<std::string>> parse_latent(std::string_view text);
FacetOverrides parse_facets(std::string_view text);
KindDecisions parse_kinds(std::string_view text);
PropertyDecisions parse_properties(std::string_view text);

// Runs all four stages over a CQ set.
std::vector<StagedCQ> run_pipeline(const std::vector<CompetencyQuestion>& cqs,
                                   const KnowledgeCore& core, const AnalysisOptions& options,
                                   const CqDecisions& decisions);

// Line-oriented dump of every stage; parse_staged reads it back.
std::string dump_staged(const std::vector<StagedCQ>& cqs);
std::vector<StagedCQ> parse_staged(std::string_view text);

}  // namespace ontokit::cq
