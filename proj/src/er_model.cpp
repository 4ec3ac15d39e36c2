#include "ontokit/er_model.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <ranges>
#include <set>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

const ERNode* ERModel::find(std::string_view label) const {
  auto it = nodes_.find(normalize_lemma(label));
  return it == nodes_.end() ? nullptr : &it->second;
}

const ERNode& ERModel::node(std::string_view label) const {
  const ERNode* n = find(label);
  if (!n) throw Error(ErrorCode::Usage, "no ER node '" + std::string(label) + "'");
  return *n;
}

ERNode& ERModel::mutable_node(std::string_view label) {
  auto it = nodes_.find(normalize_lemma(label));
  if (it == nodes_.end())
    throw Error(ErrorCode::DanglingRelation, "no ER node '" + std::string(label) + "'");
  return it->second;
}

std::vector<std::string> ERModel::hierarchy(ConceptKind kind) const {
  std::vector<std::string> out;
  for (const auto& [label, n] : nodes_)
    if (n.kind == kind) out.push_back(label);
  return out;
}

std::size_t ERModel::edge_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const auto& e) { return e.second.parent.has_value(); }));
}

ERNode& ERModel::add_node(std::string_view label, ConceptKind kind) {
  std::string key = normalize_lemma(label);
  if (key.empty()) throw Error(ErrorCode::Usage, "ER node label is empty");
  auto [it, inserted] = nodes_.try_emplace(key, ERNode{key, Gid(), kind, std::nullopt});
  if (!inserted && it->second.kind != kind)
    throw Error(ErrorCode::KindMismatch, "'" + key + "' is already in the " +
                                             std::string(cq::to_string(it->second.kind)) +
                                             " hierarchy, not " + std::string(cq::to_string(kind)));
  return it->second;
}

void ERModel::set_gid(std::string_view label, Gid gid) { mutable_node(label).gid = gid; }

void ERModel::set_parent(std::string_view child, std::string_view parent) {
  ERNode& c = mutable_node(child);
  const ERNode& p = mutable_node(parent);
  if (c.kind != p.kind)
    throw Error(ErrorCode::KindMismatch,
                "edge " + c.label + " -> " + p.label + " crosses the " +
                    std::string(cq::to_string(c.kind)) + " and " +
                    std::string(cq::to_string(p.kind)) + " hierarchies");
  if (c.parent) {
    if (*c.parent == p.label) return;
    throw Error(ErrorCode::InvalidDecision,
                "'" + c.label + "' already has parent '" + *c.parent + "'");
  }
  std::vector<std::string> chain{c.label};
  for (const ERNode* cur = &p;; cur = &nodes_.at(*cur->parent)) {
    chain.push_back(cur->label);
    if (cur->label == c.label)
      throw Error(ErrorCode::CyclicHierarchy, "edge " + c.label + " -> " + p.label +
                                                  " closes a cycle", chain);
    if (!cur->parent) break;
  }
  c.parent = p.label;
}

void ERModel::add_relation(ERRelation relation) {
  relation.name = std::string(trim(relation.name));
  if (relation.name.empty()) throw Error(ErrorCode::Usage, "relation name is empty");
  for (auto* end : {&relation.source, &relation.target}) {
    const ERNode* n = find(*end);
    if (!n)
      throw Error(ErrorCode::DanglingRelation,
                  "relation '" + relation.name + "' names unknown node '" + *end + "'");
    *end = n->label;
  }
  relations_.push_back(std::move(relation));
}

void ERModel::add_attribution(std::string_view label, cq::PropertySpec spec) {
  const ERNode& n = mutable_node(label);
  auto& specs = attributions_[n.label];
  if (std::find(specs.begin(), specs.end(), spec) == specs.end()) specs.push_back(std::move(spec));
}

std::vector<std::string> ERModel::top_down() const {
  std::map<std::string, std::vector<std::string>> children;
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [label, n] : nodes_) {
    if (n.parent)
      children[*n.parent].push_back(label);
    else
      ready.push(label);
  }
  std::vector<std::string> out;
  while (!ready.empty()) {
    out.push_back(ready.top());
    ready.pop();
    for (const auto& c : children[out.back()]) ready.push(c);
  }
  return out;
}

StructureDecisions StructureDecisions::parse(std::string_view text) {
  StructureDecisions d;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto f = split_fields(body, line_no, ErrorCode::ParseError);
    const std::string& tag = f[0].text;
    auto arity = [&](std::size_t n) {
      if (f.size() != n)
        throw Error(ErrorCode::ParseError,
                    "'" + tag + "' expects " + std::to_string(n - 1) + " fields", line_no, 1);
    };
    if (tag == "node") {
      arity(3);
      auto kind = cq::parse_concept_kind(f[2].text);
      if (!kind)
        throw Error(ErrorCode::ParseError, "unknown kind '" + f[2].text + "'", line_no,
                    f[2].column);
      d.nodes[normalize_lemma(f[1].text)] = *kind;
    } else if (tag == "edge") {
      arity(3);
      d.edges.emplace_back(normalize_lemma(f[1].text), normalize_lemma(f[2].text));
    } else if (tag == "relation") {
      arity(4);
      d.relations.push_back({f[1].text, normalize_lemma(f[2].text), normalize_lemma(f[3].text),
                             std::nullopt});
    } else if (tag == "refine") {
      arity(3);
      std::string which = fold_case(f[2].text);
      if (which != "producer" && which != "consumer")
        throw Error(ErrorCode::ParseError, "refinement must be producer or consumer", line_no,
                    f[2].column);
      d.refinements[normalize_lemma(f[1].text)] =
          which == "producer" ? ft::Distinction::Producer : ft::Distinction::Consumer;
    } else if (tag == "gid") {
      arity(3);
      std::int64_t v = 0;
      const auto& t = f[2].text;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size() || v <= 0)
        throw Error(ErrorCode::ParseError, "expected a positive GID", line_no, f[2].column);
      d.gids[normalize_lemma(f[1].text)] = Gid(v);
    } else {
      throw Error(ErrorCode::ParseError, "unknown entry '" + tag + "'", line_no, f[0].column);
    }
  }
  return d;
}

ERModel build_er(const std::vector<cq::StagedCQ>& cqs, const ft::ThingContext& context,
                 const KnowledgeCore& core, const StructureDecisions& decisions,
                 const BuildOptions& options) {
  context.validate();
  ERModel er;
  er.context = context;
  for (const auto& cq : cqs) {
    if (cq.stage != cq::Stage::Attributed)
      throw Error(ErrorCode::Usage, "CQ '" + cq.id + "' is not attributed yet");
    for (const auto& [label, kind] : cq.classified) er.add_node(label, kind);
  }
  for (const auto& [label, kind] : decisions.nodes) er.add_node(label, kind);
  for (const auto& cq : cqs)
    for (const auto& [label, specs] : cq.attributed)
      for (const auto& s : specs) er.add_attribution(label, s);

  bool searchable = core.has_language(options.language);
  for (const auto& [label, node] : er.nodes()) {
    if (auto it = decisions.gids.find(label); it != decisions.gids.end()) {
      if (!core.contains(it->second))
        throw Error(ErrorCode::UnknownGid,
                    "GID " + to_string(it->second) + " pinned for '" + label + "' is not in the core");
      er.set_gid(label, it->second);
    } else if (searchable) {
      auto hits = core.search_synonymous(label, options.language);
      if (!hits.empty()) er.set_gid(label, hits.front().gid);
    }
  }
  for (const auto& label : std::views::keys(decisions.gids))
    if (!er.contains(label))
      throw Error(ErrorCode::DanglingRelation, "GID pinned for unknown node '" + label + "'");

  for (const auto& [child, parent] : decisions.edges) er.set_parent(child, parent);
  for (const auto& r : decisions.relations) er.add_relation(r);
  return er;
}

}  // namespace ontokit
