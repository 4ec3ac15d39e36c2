#include "ontokit/knowledge_core.hpp"

#include <algorithm>
#include <queue>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

std::string to_string(Gid gid) { return std::to_string(gid.value()); }

std::vector<Lemma> Synset::lemmas() const {
  std::vector<Lemma> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    out.push_back({words[i], static_cast<int>(i + 1)});
  return out;
}

std::optional<int> Synset::rank_of(std::string_view normalized) const {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (normalize_lemma(words[i]) == normalized) return static_cast<int>(i + 1);
  return std::nullopt;
}

Gid KnowledgeCore::create_concept(const std::set<Gid>& parents, std::string gloss,
                                  Provenance provenance) {
  for (Gid p : parents)
    if (!contains(p))
      throw Error(ErrorCode::UnknownParent, "unknown parent GID " + to_string(p));
  if (trim(gloss).empty())
    throw Error(ErrorCode::EmptyGloss, "a new concept needs a non-empty gloss");

  Gid gid(next_gid_++);
  concepts_.emplace(gid, Concept{gid, parents, std::move(gloss), std::move(provenance)});
  children_[gid];
  for (Gid p : parents) children_[p].insert(gid);
  ++revision_;
  return gid;
}

void KnowledgeCore::add_hypernym(Gid child, Gid parent) {
  if (!contains(child))
    throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(child));
  if (!contains(parent))
    throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(parent));
  if (child == parent || reaches(parent, child))
    throw Error(ErrorCode::CycleDetected, "hypernym edge " + to_string(child) +
                                              " -> " + to_string(parent) +
                                              " would close a cycle");
  if (mutable_concept(child).parents.insert(parent).second) {
    children_[parent].insert(child);
    ++revision_;
  }
}

void KnowledgeCore::add_relation(Gid from, std::string label, Gid to) {
  if (!contains(from))
    throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(from));
  if (!contains(to)) throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(to));
  if (relations_.insert(Relation{from, std::move(label), to}).second) ++revision_;
}

const Concept& KnowledgeCore::at(Gid gid) const {
  auto it = concepts_.find(gid);
  if (it == concepts_.end())
    throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(gid));
  return it->second;
}

Concept& KnowledgeCore::mutable_concept(Gid gid) {
  auto it = concepts_.find(gid);
  if (it == concepts_.end())
    throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(gid));
  return it->second;
}

std::set<Gid> KnowledgeCore::ancestors(Gid gid) const {
  std::set<Gid> seen;
  std::vector<Gid> stack(at(gid).parents.begin(), at(gid).parents.end());
  while (!stack.empty()) {
    Gid g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    for (Gid p : at(g).parents) stack.push_back(p);
  }
  return seen;
}

bool KnowledgeCore::reaches(Gid from, Gid ancestor) const {
  if (from == ancestor) return true;
  std::set<Gid> seen;
  std::vector<Gid> stack{from};
  while (!stack.empty()) {
    Gid g = stack.back();
    stack.pop_back();
    if (g == ancestor) return true;
    if (!seen.insert(g).second) continue;
    for (Gid p : at(g).parents) stack.push_back(p);
  }
  return false;
}

std::vector<Gid> KnowledgeCore::children(Gid gid) const {
  auto it = children_.find(gid);
  if (it == children_.end()) {
    if (!contains(gid)) throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(gid));
    return {};
  }
  return {it->second.begin(), it->second.end()};
}

std::vector<Gid> KnowledgeCore::roots() const {
  std::vector<Gid> out;
  for (const auto& [gid, c] : concepts_)
    if (c.parents.empty()) out.push_back(gid);
  return out;
}

std::vector<Gid> KnowledgeCore::topological_order() const {
  std::map<Gid, std::size_t> pending;
  std::priority_queue<Gid, std::vector<Gid>, std::greater<>> ready;
  for (const auto& [gid, c] : concepts_) {
    pending[gid] = c.parents.size();
    if (c.parents.empty()) ready.push(gid);
  }
  std::vector<Gid> order;
  order.reserve(concepts_.size());
  while (!ready.empty()) {
    Gid g = ready.top();
    ready.pop();
    order.push_back(g);
    for (Gid child : children(g))
      if (--pending[child] == 0) ready.push(child);
  }
  if (order.size() != concepts_.size())
    throw Error(ErrorCode::CycleDetected, "hypernym graph contains a cycle");
  return order;
}

void KnowledgeCore::add_language(std::string language) {
  if (languages_.count(language)) return;
  lemma_index_[language];
  languages_.emplace(language, LanguageModule{language, {}});
  ++revision_;
}

bool KnowledgeCore::has_language(std::string_view language) const {
  return languages_.find(language) != languages_.end();
}

std::vector<std::string> KnowledgeCore::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, module] : languages_) out.push_back(lang);
  return out;
}

const LanguageModule& KnowledgeCore::language_module(std::string_view language) const {
  auto it = languages_.find(language);
  if (it == languages_.end())
    throw Error(ErrorCode::UnknownLanguage,
                "no language module for '" + std::string(language) + "'");
  return it->second;
}

std::vector<SearchHit> KnowledgeCore::search_synonymous(std::string_view lemma,
                                                        std::string_view language) const {
  const LanguageModule& module = language_module(language);
  std::string key = normalize_lemma(lemma);
  std::vector<SearchHit> hits;
  auto lang_it = lemma_index_.find(language);
  if (lang_it == lemma_index_.end()) return hits;
  auto it = lang_it->second.find(key);
  if (it == lang_it->second.end()) return hits;
  for (Gid gid : it->second) {
    const Synset& s = module.synsets.at(gid);
    hits.push_back(SearchHit{gid, s, *s.rank_of(key)});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    return std::tie(a.wsr, a.gid) < std::tie(b.wsr, b.gid);
  });
  return hits;
}

Synset& KnowledgeCore::synset_for_update(Gid gid, const std::string& language) {
  auto& module = languages_[language];
  module.language = language;
  auto [it, inserted] = module.synsets.try_emplace(gid);
  if (inserted) {
    it->second.gid = gid;
    it->second.language = language;
  }
  return it->second;
}

void KnowledgeCore::index_word(const std::string& language, const std::string& word,
                               Gid gid) {
  lemma_index_[language][normalize_lemma(word)].insert(gid);
}

void KnowledgeCore::attach_sense(Gid gid, const std::string& language,
                                 const std::string& word, int wsr) {
  if (!contains(gid)) throw Error(ErrorCode::UnknownGid, "unknown GID " + to_string(gid));
  std::string key = normalize_lemma(word);
  if (key.empty()) throw Error(ErrorCode::DuplicateLemma, "empty lemma");
  const Synset* existing = synset(gid, language);
  std::size_t count = existing ? existing->words.size() : 0;
  if (existing && existing->rank_of(key))
    throw Error(ErrorCode::DuplicateLemma,
                "'" + word + "' already in synset " + to_string(gid) + "/" + language);
  if (wsr < 1 || static_cast<std::size_t>(wsr) > count + 1)
    throw Error(ErrorCode::RankGap, "rank " + std::to_string(wsr) +
                                        " would leave a gap in a synset of " +
                                        std::to_string(count) + " lemmas");
  Synset& s = synset_for_update(gid, language);
  s.words.insert(s.words.begin() + (wsr - 1), normalize_whitespace(word));
  index_word(language, word, gid);
  ++revision_;
}

void KnowledgeCore::set_synset_gloss(Gid gid, const std::string& language,
                                     std::string gloss) {
  if (!synset(gid, language))
    throw Error(ErrorCode::UnknownGid,
                "no synset for " + to_string(gid) + " in '" + language + "'");
  synset_for_update(gid, language).gloss = std::move(gloss);
  ++revision_;
}

void KnowledgeCore::add_example(Gid gid, const std::string& language,
                                std::string example) {
  if (!synset(gid, language))
    throw Error(ErrorCode::UnknownGid,
                "no synset for " + to_string(gid) + " in '" + language + "'");
  synset_for_update(gid, language).examples.push_back(std::move(example));
  ++revision_;
}

const Synset* KnowledgeCore::synset(Gid gid, std::string_view language) const {
  auto lang = languages_.find(language);
  if (lang == languages_.end()) return nullptr;
  auto it = lang->second.synsets.find(gid);
  return it == lang->second.synsets.end() ? nullptr : &it->second;
}

std::vector<const Synset*> KnowledgeCore::synsets_of(Gid gid) const {
  std::vector<const Synset*> out;
  for (const auto& [lang, module] : languages_) {
    auto it = module.synsets.find(gid);
    if (it != module.synsets.end()) out.push_back(&it->second);
  }
  return out;
}

void KnowledgeCore::rebuild_indexes() {
  children_.clear();
  for (const auto& [gid, c] : concepts_) {
    children_[gid];
    for (Gid p : c.parents) children_[p].insert(gid);
  }
  lemma_index_.clear();
  for (const auto& [lang, module] : languages_) {
    lemma_index_[lang];
    for (const auto& [gid, s] : module.synsets)
      for (const auto& w : s.words) index_word(lang, w, gid);
  }
}

bool operator==(const KnowledgeCore& a, const KnowledgeCore& b) {
  return a.next_gid_ == b.next_gid_ && a.concepts_ == b.concepts_ &&
         a.relations_ == b.relations_ && a.languages_ == b.languages_;
}

}  // namespace ontokit
