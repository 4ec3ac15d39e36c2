#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ontokit/decision_script.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/ontology.hpp"

namespace ontokit {

// Synonymous match: the candidate is an existing concept.
struct SynonymousMatch {
  Gid gid;
  int wsr = 1;
  friend bool operator==(const SynonymousMatch&, const SynonymousMatch&) = default;
};

// No synonymous match: a new concept, numbered -1, -2, ... per sheet.
struct NoSynonymousMatch {
  Gid placeholder;
  friend bool operator==(const NoSynonymousMatch&, const NoSynonymousMatch&) = default;
};

using MatchOutcome = std::variant<SynonymousMatch, NoSynonymousMatch>;

struct AnnotationRecord {
  std::string label;
  std::string language;
  HierarchyKind kind = HierarchyKind::Class;
  MatchOutcome outcome;
  std::string parent_label;
  Gid parent_gid;  // committed GID, earlier placeholder, or null for a root
  std::string gloss;  // required for new concepts, empty otherwise
  std::string source_iri;

  bool is_new() const { return std::holds_alternative<NoSynonymousMatch>(outcome); }
  // The GID of a match, or the placeholder of a new concept.
  Gid gid() const;
  // Word sense rank of a match; 0 for a new concept.
  int wsr() const;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct SessionMetadata {
  std::string annotator;
  std::uint64_t core_revision = 0;
  std::vector<std::string> skipped;  // "<kind>:<label>"
  friend bool operator==(const SessionMetadata&, const SessionMetadata&) = default;
};

struct AnnotationSheet {
  std::string source_iri;
  SessionMetadata metadata;
  std::vector<AnnotationRecord> records;

  std::size_t new_concept_count() const;
  friend bool operator==(const AnnotationSheet&, const AnnotationSheet&) = default;
};

struct AnnotateOptions {
  std::string annotator;
  // Parent recorded for hierarchy roots; null leaves them parentless.
  Gid default_parent;
  // Candidates (by IRI) that already carry a GID: they produce no record but
  // resolve as parents of the others.
  std::map<std::string, Gid> preresolved;
};

// A cursor over the candidates of one ontology in annotation order: every
// hierarchy top-down, classes first, then object and data properties.
class AnnotationSession {
 public:
  AnnotationSession(const InformalOntology& ontology, const KnowledgeCore& core,
                    AnnotateOptions options = {});

  bool done() const noexcept { return cursor_ == tasks_.size(); }
  std::size_t position() const noexcept { return cursor_; }
  std::size_t total() const noexcept { return tasks_.size(); }

  const ConceptCandidate& current() const;
  const std::vector<SearchHit>& current_hits() const;
  std::string current_parent_label() const;
  Gid current_parent_gid() const;

  // Records the decision for the current candidate and advances. Throws
  // MissingGloss for a new concept without gloss, InvalidDecision for an
  // accepted GID outside the hits without override.
  void decide(const Decision& decision);

  const AnnotationSheet& sheet() const noexcept { return sheet_; }

 private:
  struct Resolved {
    std::string label;
    Gid gid;
  };
  std::optional<Resolved> resolve_parent(const ConceptCandidate& c) const;
  void refresh();

  const KnowledgeCore& core_;
  AnnotateOptions options_;
  std::vector<ConceptCandidate> tasks_;
  std::map<std::string, ConceptCandidate> nodes_;
  std::set<std::string> skipped_;
  std::map<std::string, Resolved> resolved_;  // IRI -> label/GID or placeholder
  std::size_t cursor_ = 0;
  std::int64_t next_placeholder_ = -1;
  std::vector<SearchHit> hits_;
  std::optional<Resolved> parent_;
  AnnotationSheet sheet_;
};

// Returns the decision for a candidate given its search hits, or nullopt when
// it has none.
using DecisionSource = std::function<std::optional<Decision>(
    const ConceptCandidate&, const std::vector<SearchHit>&)>;

DecisionSource decisions_from(const DecisionScript& script);
// Accepts the first hit; unmatched candidates become new concepts with their
// ontology gloss.
DecisionSource accept_first();

// Throws MissingDecision naming the label when the source has no answer.
AnnotationSheet annotate(const InformalOntology& ontology, const KnowledgeCore& core,
                         const DecisionSource& decisions, AnnotateOptions options = {});

enum class ViolationKind {
  PlaceholderSequence,
  UnknownGid,
  InvalidRank,
  UnresolvableParent,
  ForwardParentReference,
  MissingGloss,
  GenusDifferentia,
  EmptyLabel,
  DisputedParent,  // warning
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t record = 0;  // 0-based record index
  std::string message;
  bool warning = false;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// All rule violations of a sheet against a core; an empty list means valid.
// Warnings do not block import.
std::vector<Violation> validate_sheet(const AnnotationSheet& sheet, const KnowledgeCore& core);
bool has_errors(const std::vector<Violation>& violations);

// Genus-differentia heuristic used by validate_sheet: the gloss names one of
// the genus phrases and has at least one further content word that is not
// part of the concept's own label.
bool satisfies_genus_differentia(std::string_view gloss, std::string_view label,
                                 const std::vector<std::string>& genus_phrases);

// Commits the sheet: new concepts get fresh GIDs under their parents with the
// sheet label as WSR-1 sense; matches gain the label as an extra sense when
// missing. All-or-nothing: on any error `core` is unchanged. Returns the
// placeholder -> GID mapping.
std::map<Gid, Gid> import_sheet(const AnnotationSheet& sheet, KnowledgeCore& core);

}  // namespace ontokit
