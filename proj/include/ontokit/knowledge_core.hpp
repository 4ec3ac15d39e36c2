#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontokit/hierarchy_kind.hpp"

namespace ontokit {

// Global identifier of an alinguistic concept. Positive values are committed
// concepts; negative values are sheet-local placeholders; zero means "none".
class Gid {
 public:
  constexpr Gid() = default;
  constexpr explicit Gid(std::int64_t value) : value_(value) {}

  constexpr std::int64_t value() const noexcept { return value_; }
  constexpr bool committed() const noexcept { return value_ > 0; }
  constexpr bool placeholder() const noexcept { return value_ < 0; }
  constexpr bool null() const noexcept { return value_ == 0; }

  friend constexpr auto operator<=>(Gid, Gid) = default;

 private:
  std::int64_t value_ = 0;
};

std::string to_string(Gid gid);

// Where a concept came from: an ontology IRI plus hierarchy kind, or native
// to the core (empty IRI).
struct Provenance {
  std::string source_iri;
  std::optional<HierarchyKind> kind;

  static Provenance native() { return {}; }
  bool is_native() const noexcept { return source_iri.empty(); }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Concept {
  Gid gid;
  std::set<Gid> parents;  // hypernyms
  std::string gloss;
  Provenance provenance;
  friend bool operator==(const Concept&, const Concept&) = default;
};

struct Lemma {
  std::string word;
  int wsr = 1;
  friend bool operator==(const Lemma&, const Lemma&) = default;
};

// Lemmas are stored in rank order; the word sense rank of words[i] is i + 1,
// so ranks are gapless by construction.
struct Synset {
  Gid gid;
  std::string language;
  std::vector<std::string> words;
  std::string gloss;
  std::vector<std::string> examples;

  std::vector<Lemma> lemmas() const;
  const std::string& preferred() const { return words.front(); }
  // Rank of the lemma matching `normalized` (see normalize_lemma), if any.
  std::optional<int> rank_of(std::string_view normalized) const;
  friend bool operator==(const Synset&, const Synset&) = default;
};

struct LanguageModule {
  std::string language;
  std::map<Gid, Synset> synsets;
  friend bool operator==(const LanguageModule&, const LanguageModule&) = default;
};

// Non-structural labeled edge; never part of the acyclicity check.
struct Relation {
  Gid from;
  std::string label;
  Gid to;
  friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct SearchHit {
  Gid gid;
  Synset synset;
  int wsr = 1;
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// Concept core (hypernymy DAG over GIDs) plus language core (per-language
// synset modules). Mutators validate first and leave the core untouched when
// they throw.
class KnowledgeCore {
 public:
  // Returns a fresh GID greater than every GID issued before. An empty parent
  // set makes the concept a root.
  Gid create_concept(const std::set<Gid>& parents, std::string gloss,
                     Provenance provenance = Provenance::native());
  void add_hypernym(Gid child, Gid parent);
  void add_relation(Gid from, std::string label, Gid to);

  bool contains(Gid gid) const { return concepts_.count(gid) != 0; }
  const Concept& at(Gid gid) const;
  std::size_t size() const noexcept { return concepts_.size(); }
  bool empty() const noexcept { return concepts_.empty(); }
  const std::map<Gid, Concept>& concepts() const noexcept { return concepts_; }
  const std::set<Relation>& relations() const noexcept { return relations_; }

  // Strict ancestors (transitive hypernyms).
  std::set<Gid> ancestors(Gid gid) const;
  bool reaches(Gid from, Gid ancestor) const;
  std::vector<Gid> children(Gid gid) const;
  std::vector<Gid> roots() const;
  // Parents before children; ties broken by GID.
  std::vector<Gid> topological_order() const;

  Gid last_issued() const noexcept { return Gid(next_gid_ - 1); }
  std::uint64_t revision() const noexcept { return revision_; }

  void add_language(std::string language);
  bool has_language(std::string_view language) const;
  std::vector<std::string> languages() const;
  const LanguageModule& language_module(std::string_view language) const;

  // All synsets in `language` containing the lemma, ordered by the lemma's
  // WSR, then GID.
  std::vector<SearchHit> search_synonymous(std::string_view lemma,
                                           std::string_view language) const;

  // Inserts `word` at rank `wsr`, shifting existing ranks >= wsr down by one.
  // Creates the language module and the synset on first use.
  void attach_sense(Gid gid, const std::string& language, const std::string& word,
                    int wsr);
  void set_synset_gloss(Gid gid, const std::string& language, std::string gloss);
  void add_example(Gid gid, const std::string& language, std::string example);
  const Synset* synset(Gid gid, std::string_view language) const;
  std::vector<const Synset*> synsets_of(Gid gid) const;

  friend bool operator==(const KnowledgeCore& a, const KnowledgeCore& b);

  friend void write_snapshot(const KnowledgeCore& core, std::ostream& out);
  friend KnowledgeCore read_snapshot(std::istream& in);

 private:
  Concept& mutable_concept(Gid gid);
  Synset& synset_for_update(Gid gid, const std::string& language);
  void index_word(const std::string& language, const std::string& word, Gid gid);
  void rebuild_indexes();

  std::map<Gid, Concept> concepts_;
  std::map<Gid, std::set<Gid>> children_;
  std::set<Relation> relations_;
  std::map<std::string, LanguageModule, std::less<>> languages_;
  // language -> normalized lemma -> synsets containing it
  std::map<std::string, std::map<std::string, std::set<Gid>, std::less<>>, std::less<>>
      lemma_index_;
  std::int64_t next_gid_ = 1;
  std::uint64_t revision_ = 0;
};

// Line-oriented, versioned text snapshot; the format is described in README.md.
void write_snapshot(const KnowledgeCore& core, std::ostream& out);
// Throws Error(CorruptSnapshot) with the offending line and column.
KnowledgeCore read_snapshot(std::istream& in);
std::string snapshot_text(const KnowledgeCore& core);
KnowledgeCore snapshot_from_text(std::string_view text);
void save_snapshot(const KnowledgeCore& core, const std::filesystem::path& path);
KnowledgeCore load_snapshot(const std::filesystem::path& path);

// Single-writer / multiple-reader access to one core.
class SharedCore {
 public:
  SharedCore() = default;
  explicit SharedCore(KnowledgeCore core) : core_(std::move(core)) {}

  template <class F>
  decltype(auto) read(F&& f) const {
    std::shared_lock lock(mutex_);
    return std::invoke(std::forward<F>(f), std::as_const(core_));
  }

  template <class F>
  decltype(auto) write(F&& f) {
    std::unique_lock lock(mutex_);
    return std::invoke(std::forward<F>(f), core_);
  }

  KnowledgeCore copy() const {
    std::shared_lock lock(mutex_);
    return core_;
  }

 private:
  mutable std::shared_mutex mutex_;
  KnowledgeCore core_;
};

}  // namespace ontokit
