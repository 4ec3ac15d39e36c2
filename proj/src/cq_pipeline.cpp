#include "ontokit/cq_pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ontokit/error.hpp"

namespace ontokit::cq {

std::string_view to_string(Facet f) {
  switch (f) {
    case Facet::CommonSpace: return "common-space";
    case Facet::CommonTime: return "common-time";
    case Facet::Core: return "core";
    case Facet::Contextual: return "contextual";
  }
  return "core";
}

std::string_view to_string(ConceptKind k) {
  switch (k) {
    case ConceptKind::Object: return "object";
    case ConceptKind::Function: return "function";
    case ConceptKind::Action: return "action";
  }
  return "object";
}

std::string_view to_string(PropertyKind k) {
  return k == PropertyKind::ObjectProperty ? "object-property" : "data-property";
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Raw: return "raw";
    case Stage::Kernel: return "kernel";
    case Stage::Analyzed: return "analyzed";
    case Stage::Classified: return "classified";
    case Stage::Attributed: return "attributed";
  }
  return "raw";
}

std::string_view to_string(AssignmentSource s) {
  return s == AssignmentSource::Heuristic ? "heuristic" : "override";
}

namespace {

template <class E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const E (&all)[N]) {
  for (E e : all)
    if (to_string(e) == s) return e;
  return std::nullopt;
}

}  // namespace

std::optional<Facet> parse_facet(std::string_view s) {
  static constexpr Facet all[] = {Facet::CommonSpace, Facet::CommonTime, Facet::Core,
                                  Facet::Contextual};
  return parse_enum(s, all);
}

std::optional<ConceptKind> parse_concept_kind(std::string_view s) {
  static constexpr ConceptKind all[] = {ConceptKind::Object, ConceptKind::Function,
                                        ConceptKind::Action};
  return parse_enum(s, all);
}

std::optional<PropertyKind> parse_property_kind(std::string_view s) {
  static constexpr PropertyKind all[] = {PropertyKind::ObjectProperty,
                                         PropertyKind::DataProperty};
  return parse_enum(s, all);
}

std::optional<Stage> parse_stage(std::string_view s) {
  static constexpr Stage all[] = {Stage::Raw, Stage::Kernel, Stage::Analyzed,
                                  Stage::Classified, Stage::Attributed};
  return parse_enum(s, all);
}

std::optional<AssignmentSource> parse_assignment_source(std::string_view s) {
  static constexpr AssignmentSource all[] = {AssignmentSource::Heuristic,
                                             AssignmentSource::Override};
  return parse_enum(s, all);
}

bool is_datatype_name(std::string_view name) {
  static const std::set<std::string_view> names = {
      "string",   "boolean", "integer", "int",      "long",     "short",
      "decimal",  "float",   "double",  "date",     "dateTime", "time",
      "duration", "anyURI",  "gYear",   "gYearMonth", "nonNegativeInteger",
      "positiveInteger", "langString"};
  if (name.substr(0, 4) == "xsd:") name.remove_prefix(4);
  return names.count(name) != 0;
}

void check_property(const PropertySpec& spec) {
  if (trim(spec.name).empty() || spec.name.find_first_of(" \t") != std::string::npos)
    throw Error(ErrorCode::MalformedProperty,
                "property name must be a single non-empty word, got '" + spec.name + "'");
  if (trim(spec.range).empty())
    throw Error(ErrorCode::MalformedProperty, "property '" + spec.name + "' has no range");
  bool datatype = is_datatype_name(spec.range);
  if (spec.kind == PropertyKind::ObjectProperty && datatype)
    throw Error(ErrorCode::MalformedProperty, "object property '" + spec.name +
                                                  "' cannot range over datatype " + spec.range);
  if (spec.kind == PropertyKind::DataProperty && !datatype)
    throw Error(ErrorCode::MalformedProperty, "data property '" + spec.name +
                                                  "' needs a datatype range, got '" +
                                                  spec.range + "'");
}

std::vector<std::string> monotonicity_violations(const StagedCQ& cq) {
  std::vector<std::string> out;
  std::set<std::string> kernel;
  for (const auto& l : cq.kernel) kernel.insert(l.text);
  auto check = [&](const auto& stage_map, const auto& previous, Stage stage) {
    for (const auto& [label, value] : stage_map)
      if (!previous.count(label))
        out.push_back(std::string(to_string(stage)) + " stage names '" + label +
                      "' absent from the previous stage");
    if (cq.stage >= stage)
      for (const auto& k : kernel)
        if (!stage_map.count(k))
          out.push_back(std::string(to_string(stage)) + " stage misses kernel label '" + k + "'");
  };
  if (cq.stage >= Stage::Kernel && kernel.empty()) out.push_back("empty kernel");
  std::set<std::string> analyzed, classified;
  for (const auto& [l, v] : cq.analyzed) analyzed.insert(l);
  for (const auto& [l, v] : cq.classified) classified.insert(l);
  check(cq.analyzed, kernel, Stage::Analyzed);
  check(cq.classified, analyzed, Stage::Classified);
  check(cq.attributed, classified, Stage::Attributed);
  return out;
}

PhraseLexicon PhraseLexicon::parse(std::string_view text) {
  PhraseLexicon lex;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    lex.add(line);
  }
  return lex;
}

void PhraseLexicon::add(std::string_view phrase) {
  auto tokens = tokenize(phrase);
  if (tokens.size() < 2) return;
  if (std::find(phrases_.begin(), phrases_.end(), tokens) != phrases_.end()) return;
  phrases_.push_back(std::move(tokens));
  std::stable_sort(phrases_.begin(), phrases_.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

std::vector<std::string> PhraseLexicon::merge(const std::vector<std::string>& tokens) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size();) {
    bool merged = false;
    for (const auto& p : phrases_) {
      if (i + p.size() > tokens.size()) continue;
      if (!std::equal(p.begin(), p.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      std::string joined;
      for (const auto& t : p) joined += (joined.empty() ? "" : " ") + t;
      out.push_back(std::move(joined));
      i += p.size();
      merged = true;
      break;
    }
    if (!merged) out.push_back(tokens[i++]);
  }
  return out;
}

StagedCQ to_kernel(StagedCQ cq, const StopwordList& stopwords, const PhraseLexicon& lexicon,
                   const std::vector<std::string>& latent) {
  cq.kernel.clear();
  cq.analyzed.clear();
  cq.classified.clear();
  cq.attributed.clear();
  std::set<std::string> seen;
  for (auto& term : lexicon.merge(tokenize(cq.raw))) {
    bool phrase = term.find(' ') != std::string::npos;
    if (!phrase && stopwords.contains(term)) continue;
    if (seen.insert(term).second) cq.kernel.push_back({std::move(term), false});
  }
  for (const auto& l : latent) {
    std::string label = normalize_lemma(l);
    if (label.empty()) continue;
    if (seen.insert(label).second) cq.kernel.push_back({std::move(label), true});
  }
  if (cq.kernel.empty())
    throw Error(ErrorCode::EmptyKernel, "CQ '" + cq.id + "' has no concept left after "
                                                         "removing stopwords");
  cq.stage = Stage::Kernel;
  return cq;
}

namespace {

void require_stage(const StagedCQ& cq, Stage expected) {
  if (cq.stage != expected)
    throw Error(ErrorCode::Usage, "CQ '" + cq.id + "' is at stage " +
                                      std::string(to_string(cq.stage)) + ", expected " +
                                      std::string(to_string(expected)));
}

}  // namespace

StagedCQ to_analyzed(StagedCQ cq, const KnowledgeCore& core, const AnalysisOptions& options,
                     const FacetOverrides& overrides) {
  require_stage(cq, Stage::Kernel);
  bool searchable = core.has_language(options.language);
  for (const auto& label : cq.kernel) {
    if (auto it = overrides.find(label.text); it != overrides.end()) {
      cq.analyzed[label.text] = {it->second, AssignmentSource::Override};
      continue;
    }
    std::vector<SearchHit> hits;
    if (searchable) hits = core.search_synonymous(label.text, options.language);
    if (hits.empty() && options.strict)
      throw Error(ErrorCode::UnresolvedLabel,
                  "'" + label.text + "' in CQ '" + cq.id + "' has no core concept");
    Facet facet = Facet::Core;
    for (const auto& h : hits) {
      if (!options.space.null() && core.contains(options.space) &&
          core.reaches(h.gid, options.space)) {
        facet = Facet::CommonSpace;
        break;
      }
      if (!options.time.null() && core.contains(options.time) &&
          core.reaches(h.gid, options.time)) {
        facet = Facet::CommonTime;
        break;
      }
    }
    cq.analyzed[label.text] = {facet, AssignmentSource::Heuristic};
  }
  cq.stage = Stage::Analyzed;
  return cq;
}

StagedCQ to_classified(StagedCQ cq, const KindDecisions& decisions) {
  require_stage(cq, Stage::Analyzed);
  std::vector<std::string> missing;
  for (const auto& [label, facet] : cq.analyzed) {
    auto it = decisions.find(label);
    if (it == decisions.end())
      missing.push_back(label);
    else
      cq.classified[label] = it->second;
  }
  if (!missing.empty())
    throw Error(ErrorCode::MissingKindDecision,
                "CQ '" + cq.id + "' has no object/function/action decision for " +
                    std::to_string(missing.size()) + " label(s)",
                missing);
  cq.stage = Stage::Classified;
  return cq;
}

StagedCQ to_attributed(StagedCQ cq, const PropertyDecisions& decisions,
                       const std::function<bool(std::string_view)>& label_known) {
  require_stage(cq, Stage::Classified);
  for (const auto& [label, kind] : cq.classified) {
    auto& specs = cq.attributed[label];
    auto it = decisions.find(label);
    if (it == decisions.end()) continue;
    for (const auto& spec : it->second) {
      check_property(spec);
      if (spec.kind == PropertyKind::ObjectProperty && label_known &&
          !label_known(spec.range))
        cq.warnings.push_back("object property '" + spec.name + "' of '" + label +
                              "' ranges over unknown concept '" + spec.range + "'");
      specs.push_back(spec);
    }
  }
  cq.stage = Stage::Attributed;
  return cq;
}

std::vector<CompetencyQuestion> parse_cq_file(std::string_view text) {
  std::vector<CompetencyQuestion> out;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos || trim(line.substr(0, colon)).empty())
      throw Error(ErrorCode::ParseError, "expected '<id>: <question>'", line_no, 1);
    std::string id(trim(line.substr(0, colon)));
    if (!ids.insert(id).second)
      throw Error(ErrorCode::ParseError, "duplicate CQ id '" + id + "'", line_no, 1);
    out.push_back({std::move(id), std::string(trim(line.substr(colon + 1)))});
  }
  return out;
}

namespace {

template <class F>
void for_each_entry(std::string_view text, char sep, F&& f) {
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto pos = line.find(sep);
    if (pos == std::string_view::npos)
      throw Error(ErrorCode::ParseError, std::string("expected '") + sep + "'", line_no, 1);
    auto key = trim(line.substr(0, pos));
    if (key.empty()) throw Error(ErrorCode::ParseError, "empty key", line_no, 1);
    f(key, trim(line.substr(pos + 1)), line_no, pos + 2);
  }
}

}  // namespace

std::map<std::string, std::vector<std::string>> parse_latent(std::string_view text) {
  std::map<std::string, std::vector<std::string>> out;
  for_each_entry(text, ':', [&](auto key, auto value, std::size_t, std::size_t) {
    auto& list = out[std::string(key)];
    for (auto item : split(value, ','))
      if (!trim(item).empty()) list.push_back(normalize_lemma(item));
  });
  return out;
}

FacetOverrides parse_facets(std::string_view text) {
  FacetOverrides out;
  for_each_entry(text, '=', [&](auto key, auto value, std::size_t line, std::size_t col) {
    auto f = parse_facet(value);
    if (!f) throw Error(ErrorCode::ParseError, "unknown facet '" + std::string(value) + "'", line, col);
    out[normalize_lemma(key)] = *f;
  });
  return out;
}

KindDecisions parse_kinds(std::string_view text) {
  KindDecisions out;
  for_each_entry(text, '=', [&](auto key, auto value, std::size_t line, std::size_t col) {
    auto k = parse_concept_kind(value);
    if (!k) throw Error(ErrorCode::ParseError, "unknown kind '" + std::string(value) + "'", line, col);
    out[normalize_lemma(key)] = *k;
  });
  return out;
}

PropertyDecisions parse_properties(std::string_view text) {
  PropertyDecisions out;
  for_each_entry(text, ':', [&](auto key, auto value, std::size_t line, std::size_t col) {
    std::vector<std::string> words;
    std::string normalized = normalize_whitespace(value);
    for (auto w : split(normalized, ' '))
      if (!w.empty()) words.emplace_back(w);
    if (words.size() < 3)
      throw Error(ErrorCode::ParseError, "expected '<label>: <name> <kind> <range>'", line, col);
    auto kind = parse_property_kind(words[1]);
    if (!kind)
      throw Error(ErrorCode::ParseError, "unknown property kind '" + words[1] + "'", line, col);
    std::string range;
    for (std::size_t i = 2; i < words.size(); ++i) range += (i > 2 ? " " : "") + words[i];
    if (*kind == PropertyKind::ObjectProperty) range = normalize_lemma(range);
    out[normalize_lemma(key)].push_back({words[0], *kind, range});
  });
  return out;
}

CqDecisions CqDecisions::load(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory))
    throw Error(ErrorCode::Io, "decision directory " + directory.string() + " not found");
  auto read = [&](const char* name) -> std::optional<std::string> {
    auto path = directory / name;
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto parse_file = [&](const char* name, auto&& fn) {
    auto text = read(name);
    if (!text) return;
    try {
      fn(*text);
    } catch (const Error& e) {
      throw Error(e.code(), (directory / name).string() + ": " + e.what());
    }
  };
  CqDecisions d;
  parse_file("latent.txt", [&](const std::string& t) { d.latent = parse_latent(t); });
  parse_file("facets.txt", [&](const std::string& t) { d.facets = parse_facets(t); });
  parse_file("kinds.txt", [&](const std::string& t) { d.kinds = parse_kinds(t); });
  parse_file("properties.txt", [&](const std::string& t) { d.properties = parse_properties(t); });
  parse_file("phrases.txt", [&](const std::string& t) { d.phrases = PhraseLexicon::parse(t); });
  parse_file("stopwords.txt", [&](const std::string& t) { d.stopwords = StopwordList::parse(t); });
  return d;
}

std::vector<StagedCQ> run_pipeline(const std::vector<CompetencyQuestion>& cqs,
                                   const KnowledgeCore& core, const AnalysisOptions& options,
                                   const CqDecisions& decisions) {
  const StopwordList& stop = decisions.stopwords ? *decisions.stopwords : StopwordList::english();
  static const std::vector<std::string> no_latent;
  std::vector<StagedCQ> staged;
  for (const auto& q : cqs) {
    StagedCQ cq;
    cq.id = q.id;
    cq.raw = q.text;
    auto latent = decisions.latent.find(q.id);
    staged.push_back(to_kernel(std::move(cq), stop, decisions.phrases,
                               latent == decisions.latent.end() ? no_latent : latent->second));
  }
  std::set<std::string, std::less<>> labels;
  for (const auto& cq : staged)
    for (const auto& l : cq.kernel) labels.insert(l.text);
  auto known = [&](std::string_view label) {
    if (labels.count(normalize_lemma(label))) return true;
    return core.has_language(options.language) &&
           !core.search_synonymous(label, options.language).empty();
  };
  for (auto& cq : staged) {
    cq = to_analyzed(std::move(cq), core, options, decisions.facets);
    cq = to_classified(std::move(cq), decisions.kinds);
    cq = to_attributed(std::move(cq), decisions.properties, known);
  }
  return staged;
}

}  // namespace ontokit::cq
