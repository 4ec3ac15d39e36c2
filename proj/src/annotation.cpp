#include "ontokit/annotation.hpp"

#include <algorithm>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

Gid AnnotationRecord::gid() const {
  return std::visit(
      [](const auto& o) -> Gid {
        if constexpr (std::is_same_v<std::decay_t<decltype(o)>, SynonymousMatch>)
          return o.gid;
        else
          return o.placeholder;
      },
      outcome);
}

int AnnotationRecord::wsr() const {
  if (const auto* m = std::get_if<SynonymousMatch>(&outcome)) return m->wsr;
  return 0;
}

std::size_t AnnotationSheet::new_concept_count() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const AnnotationRecord& r) { return r.is_new(); }));
}

namespace {

std::string preferred_label(const KnowledgeCore& core, Gid gid, std::string_view language) {
  if (const Synset* s = core.synset(gid, language)) return s->preferred();
  auto all = core.synsets_of(gid);
  return all.empty() ? std::string() : all.front()->preferred();
}

std::string skip_key(const ConceptCandidate& c) {
  return std::string(to_string(c.kind)) + ":" + c.label;
}

}  // namespace

AnnotationSession::AnnotationSession(const InformalOntology& ontology,
                                     const KnowledgeCore& core, AnnotateOptions options)
    : core_(core), options_(std::move(options)) {
  sheet_.source_iri = ontology.iri;
  sheet_.metadata.annotator = options_.annotator;
  sheet_.metadata.core_revision = core.revision();
  for (auto kind : kAllHierarchyKinds) {
    for (auto& c : iterate_top_down(ontology, kind)) {
      nodes_.emplace(c.iri, c);
      auto pre = options_.preresolved.find(c.iri);
      if (pre != options_.preresolved.end())
        resolved_[c.iri] = Resolved{c.label, pre->second};
      else
        tasks_.push_back(std::move(c));
    }
  }
  refresh();
}

const ConceptCandidate& AnnotationSession::current() const {
  if (done()) throw Error(ErrorCode::Usage, "annotation session is complete");
  return tasks_[cursor_];
}

const std::vector<SearchHit>& AnnotationSession::current_hits() const {
  current();
  return hits_;
}

std::string AnnotationSession::current_parent_label() const {
  current();
  return parent_ ? parent_->label : std::string();
}

Gid AnnotationSession::current_parent_gid() const {
  current();
  return parent_ ? parent_->gid : Gid();
}

std::optional<AnnotationSession::Resolved> AnnotationSession::resolve_parent(
    const ConceptCandidate& c) const {
  const ConceptCandidate* cur = &c;
  while (!cur->parents.empty()) {
    const std::string& p = cur->parents.front();
    if (auto it = resolved_.find(p); it != resolved_.end()) return it->second;
    if (!skipped_.count(p))
      throw Error(ErrorCode::ForwardParentReference,
                  "parent <" + p + "> of '" + c.label + "' has not been annotated yet");
    cur = &nodes_.at(p);
  }
  if (options_.default_parent.null()) return std::nullopt;
  return Resolved{preferred_label(core_, options_.default_parent, c.language),
                  options_.default_parent};
}

void AnnotationSession::refresh() {
  hits_.clear();
  parent_.reset();
  if (done()) return;
  const auto& c = tasks_[cursor_];
  if (core_.has_language(c.language)) hits_ = core_.search_synonymous(c.label, c.language);
  parent_ = resolve_parent(c);
}

void AnnotationSession::decide(const Decision& decision) {
  const ConceptCandidate& c = current();
  AnnotationRecord rec;
  rec.label = c.label;
  rec.language = c.language;
  rec.kind = c.kind;
  rec.source_iri = c.iri;
  if (parent_) {
    rec.parent_label = parent_->label;
    rec.parent_gid = parent_->gid;
  }

  switch (decision.type) {
    case Decision::Type::Accept: {
      auto hit = std::find_if(hits_.begin(), hits_.end(),
                              [&](const SearchHit& h) { return h.gid == decision.gid; });
      int wsr = 0;
      if (hit != hits_.end()) {
        wsr = hit->wsr;
      } else if (!decision.override_hits) {
        throw Error(ErrorCode::InvalidDecision,
                    "GID " + to_string(decision.gid) + " is not a search hit for '" +
                        c.label + "'; accept it with override");
      } else if (!core_.contains(decision.gid)) {
        throw Error(ErrorCode::InvalidDecision, "GID " + to_string(decision.gid) +
                                                    " is not a committed concept");
      } else {
        const Synset* s = core_.synset(decision.gid, c.language);
        auto rank = s ? s->rank_of(normalize_lemma(c.label)) : std::nullopt;
        wsr = rank ? *rank : s ? static_cast<int>(s->words.size()) + 1 : 1;
      }
      rec.outcome = SynonymousMatch{decision.gid, wsr};
      resolved_[c.iri] = Resolved{c.label, decision.gid};
      sheet_.records.push_back(std::move(rec));
      break;
    }
    case Decision::Type::NewConcept: {
      std::string gloss = normalize_whitespace(decision.gloss);
      if (gloss.empty())
        throw Error(ErrorCode::MissingGloss, "new concept '" + c.label + "' needs a gloss");
      Gid placeholder(next_placeholder_--);
      rec.outcome = NoSynonymousMatch{placeholder};
      rec.gloss = std::move(gloss);
      resolved_[c.iri] = Resolved{c.label, placeholder};
      sheet_.records.push_back(std::move(rec));
      break;
    }
    case Decision::Type::Skip:
      skipped_.insert(c.iri);
      sheet_.metadata.skipped.push_back(skip_key(c));
      break;
  }
  ++cursor_;
  refresh();
}

DecisionSource decisions_from(const DecisionScript& script) {
  return [script](const ConceptCandidate& c,
                  const std::vector<SearchHit>&) -> std::optional<Decision> {
    if (const Decision* d = script.find(c.kind, c.label)) return *d;
    return std::nullopt;
  };
}

DecisionSource accept_first() {
  return [](const ConceptCandidate& c,
            const std::vector<SearchHit>& hits) -> std::optional<Decision> {
    if (!hits.empty()) return Decision::accept(hits.front().gid);
    return Decision::new_concept(c.gloss);
  };
}

AnnotationSheet annotate(const InformalOntology& ontology, const KnowledgeCore& core,
                         const DecisionSource& decisions, AnnotateOptions options) {
  AnnotationSession session(ontology, core, std::move(options));
  while (!session.done()) {
    const auto& c = session.current();
    auto d = decisions(c, session.current_hits());
    if (!d)
      throw Error(ErrorCode::MissingDecision,
                  "no decision for " + std::string(to_string(c.kind)) + " '" + c.label + "'");
    session.decide(*d);
  }
  return session.sheet();
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PlaceholderSequence: return "PlaceholderSequence";
    case ViolationKind::UnknownGid: return "UnknownGID";
    case ViolationKind::InvalidRank: return "InvalidRank";
    case ViolationKind::UnresolvableParent: return "UnresolvableParent";
    case ViolationKind::ForwardParentReference: return "ForwardParentReference";
    case ViolationKind::MissingGloss: return "MissingGloss";
    case ViolationKind::GenusDifferentia: return "GenusDifferentia";
    case ViolationKind::EmptyLabel: return "EmptyLabel";
    case ViolationKind::DisputedParent: return "DisputedParent";
  }
  return "Unknown";
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return !v.warning; });
}

bool satisfies_genus_differentia(std::string_view gloss, std::string_view label,
                                 const std::vector<std::string>& genus_phrases) {
  const auto& stop = StopwordList::english();
  auto words = tokenize(gloss);
  auto own = tokenize(label);
  std::set<std::string> own_set(own.begin(), own.end());
  for (const auto& phrase : genus_phrases) {
    auto genus = tokenize(phrase);
    if (genus.empty() || genus.size() > words.size()) continue;
    std::set<std::string> genus_set(genus.begin(), genus.end());
    for (std::size_t start = 0; start + genus.size() <= words.size(); ++start) {
      if (!std::equal(genus.begin(), genus.end(), words.begin() + static_cast<std::ptrdiff_t>(start)))
        continue;
      for (std::size_t k = 0; k < words.size(); ++k) {
        if (k >= start && k < start + genus.size()) continue;
        const auto& w = words[k];
        if (!stop.contains(w) && !own_set.count(w) && !genus_set.count(w)) return true;
      }
    }
  }
  return false;
}

std::vector<Violation> validate_sheet(const AnnotationSheet& sheet, const KnowledgeCore& core) {
  std::vector<Violation> out;
  const auto& records = sheet.records;
  auto report = [&](ViolationKind kind, std::size_t i, std::string msg, bool warning = false) {
    out.push_back({kind, i,
                   "record " + std::to_string(i + 1) + " ('" + records[i].label + "'): " + msg,
                   warning});
  };

  std::map<Gid, std::size_t> defined_at;  // placeholder -> defining record
  std::int64_t expected = -1;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].is_new()) continue;
    Gid p = records[i].gid();
    if (p.value() != expected)
      report(ViolationKind::PlaceholderSequence, i,
             "placeholder " + to_string(p) + " out of sequence, expected " +
                 std::to_string(expected));
    --expected;
    if (!p.placeholder())
      report(ViolationKind::PlaceholderSequence, i, "new concepts need a negative placeholder");
    else if (!defined_at.emplace(p, i).second)
      report(ViolationKind::PlaceholderSequence, i, "placeholder " + to_string(p) + " reused");
  }

  // Genus phrases: parent label plus every lemma along the parent chain.
  auto genus_phrases = [&](std::size_t i) {
    std::vector<std::string> phrases;
    std::size_t cur = i;
    std::set<Gid> seen;
    while (true) {
      const auto& r = records[cur];
      if (!r.parent_label.empty()) phrases.push_back(r.parent_label);
      Gid parent = r.parent_gid;
      if (parent.committed() && core.contains(parent)) {
        auto chain = core.ancestors(parent);
        chain.insert(parent);
        for (Gid g : chain)
          for (const Synset* s : core.synsets_of(g))
            phrases.insert(phrases.end(), s->words.begin(), s->words.end());
        break;
      }
      auto def = defined_at.find(parent);
      if (!parent.placeholder() || def == defined_at.end() || def->second >= cur ||
          !seen.insert(parent).second)
        break;
      phrases.push_back(records[def->second].label);
      cur = def->second;
    }
    return phrases;
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (trim(r.label).empty()) report(ViolationKind::EmptyLabel, i, "empty label");

    if (!r.is_new()) {
      Gid g = r.gid();
      if (!g.committed() || !core.contains(g)) {
        report(ViolationKind::UnknownGid, i, "GID " + to_string(g) + " is not in the core");
      } else {
        const Synset* s = core.synset(g, r.language);
        auto rank = s ? s->rank_of(normalize_lemma(r.label)) : std::nullopt;
        int expected_rank = rank ? *rank : s ? static_cast<int>(s->words.size()) + 1 : 1;
        if (r.wsr() != expected_rank)
          report(ViolationKind::InvalidRank, i,
                 "WSR " + std::to_string(r.wsr()) + " does not match rank " +
                     std::to_string(expected_rank) + " in synset " + to_string(g) + "/" +
                     r.language);
      }
    } else if (trim(r.gloss).empty()) {
      report(ViolationKind::MissingGloss, i, "new concepts need a gloss");
    }

    Gid parent = r.parent_gid;
    bool parent_ok = true;
    if (parent.committed()) {
      if (!core.contains(parent)) {
        report(ViolationKind::UnresolvableParent, i,
               "parent GID " + to_string(parent) + " is not in the core");
        parent_ok = false;
      }
    } else if (parent.placeholder()) {
      auto def = defined_at.find(parent);
      if (def == defined_at.end()) {
        report(ViolationKind::UnresolvableParent, i,
               "parent placeholder " + to_string(parent) + " is never defined");
        parent_ok = false;
      } else if (def->second >= i) {
        report(ViolationKind::ForwardParentReference, i,
               "parent placeholder " + to_string(parent) + " is defined by a later record");
        parent_ok = false;
      }
    }

    if (r.is_new() && !trim(r.gloss).empty() && parent_ok &&
        !satisfies_genus_differentia(r.gloss, r.label, genus_phrases(i)))
      report(ViolationKind::GenusDifferentia, i,
             "gloss must name the parent kind (genus) plus a distinguishing trait");

    if (!r.is_new() && parent_ok && !parent.null() && core.contains(r.gid())) {
      bool agrees = parent.committed() && core.reaches(r.gid(), parent) && r.gid() != parent;
      if (!agrees)
        report(ViolationKind::DisputedParent, i,
               "core does not place " + to_string(r.gid()) + " under '" + r.parent_label +
                   "' (" + to_string(parent) + ")",
               true);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) { return a.record < b.record; });
  return out;
}

std::map<Gid, Gid> import_sheet(const AnnotationSheet& sheet, KnowledgeCore& core) {
  auto violations = validate_sheet(sheet, core);
  if (has_errors(violations)) {
    std::vector<std::string> details;
    for (const auto& v : violations)
      if (!v.warning) details.push_back(std::string(to_string(v.kind)) + ": " + v.message);
    throw Error(ErrorCode::ValidationFailed,
                "sheet has " + std::to_string(details.size()) + " violation(s)", details);
  }

  KnowledgeCore work = core;
  std::map<Gid, Gid> mapping;
  auto resolve = [&](Gid g) { return g.placeholder() ? mapping.at(g) : g; };
  for (const auto& r : sheet.records) {
    if (r.is_new()) {
      std::set<Gid> parents;
      if (!r.parent_gid.null()) parents.insert(resolve(r.parent_gid));
      Gid gid = work.create_concept(parents, r.gloss, Provenance{r.source_iri, r.kind});
      work.attach_sense(gid, r.language, r.label, 1);
      work.set_synset_gloss(gid, r.language, r.gloss);
      mapping.emplace(r.gid(), gid);
    } else {
      const Synset* s = work.synset(r.gid(), r.language);
      if (!s || !s->rank_of(normalize_lemma(r.label)))
        work.attach_sense(r.gid(), r.language, r.label,
                          s ? static_cast<int>(s->words.size()) + 1 : 1);
    }
  }
  core = std::move(work);
  return mapping;
}

}  // namespace ontokit
