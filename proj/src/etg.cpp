#include "ontokit/etg.hpp"

#include <cctype>
#include <deque>
#include <set>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

ETG::ETG(ERModel model) : model_(std::move(model)) {
  std::vector<std::string> informal;
  for (const auto& [label, n] : model_.nodes())
    if (!n.gid.committed()) informal.push_back(label);
  if (!informal.empty())
    throw Error(ErrorCode::ValidationFailed,
                std::to_string(informal.size()) + " node(s) without a committed GID", informal);
}

std::string er_node_iri(std::string_view label) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string iri = "urn:ontokit:er:";
  for (unsigned char c : normalize_lemma(label)) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      iri += static_cast<char>(c);
    } else {
      iri += '%';
      iri += hex[c >> 4];
      iri += hex[c & 15];
    }
  }
  return iri;
}

InformalOntology er_ontology(const ERModel& er, const std::string& language) {
  InformalOntology onto;
  onto.iri = "urn:ontokit:er";
  for (const auto& [label, n] : er.nodes()) {
    ConceptCandidate c;
    c.iri = er_node_iri(label);
    c.label = label;
    c.language = language;
    c.labels[language] = label;
    c.kind = HierarchyKind::Class;
    if (n.parent) c.parents.push_back(er_node_iri(*n.parent));
    onto.classes.insert(std::move(c));
  }
  return onto;
}

FormalizeResult formalize_to_etg(const ERModel& er, KnowledgeCore& core,
                                 const DecisionScript& decisions,
                                 const FormalizeOptions& options) {
  AnnotateOptions annotate_options;
  annotate_options.annotator = options.annotator;
  annotate_options.default_parent = options.default_parent;
  std::map<std::string, std::string> by_iri;
  for (const auto& [label, n] : er.nodes()) {
    by_iri[er_node_iri(label)] = label;
    if (n.gid.null()) continue;
    if (!n.gid.committed() || !core.contains(n.gid))
      throw Error(ErrorCode::UnknownGid,
                  "node '" + label + "' carries GID " + to_string(n.gid) + " unknown to the core");
    annotate_options.preresolved[er_node_iri(label)] = n.gid;
  }

  FormalizeResult result;
  result.sheet = annotate(er_ontology(er, options.language), core, decisions_from(decisions),
                          annotate_options);
  if (!result.sheet.metadata.skipped.empty()) {
    std::vector<std::string> details(result.sheet.metadata.skipped.begin(),
                                     result.sheet.metadata.skipped.end());
    throw Error(ErrorCode::ValidationFailed, "skipped nodes would leave the ETG informal",
                details);
  }
  result.mapping = import_sheet(result.sheet, core);

  ERModel formal = er;
  for (const auto& r : result.sheet.records) {
    Gid gid = r.is_new() ? result.mapping.at(r.gid()) : r.gid();
    formal.set_gid(by_iri.at(r.source_iri), gid);
  }
  result.etg = ETG(std::move(formal));
  return result;
}

ft::Distinction hierarchy_distinction(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::Object: return ft::Distinction::Object;
    case ConceptKind::Function: return ft::Distinction::Function;
    case ConceptKind::Action: return ft::Distinction::Action;
  }
  return ft::Distinction::Anything;
}

namespace {

// A Producer should drive some action and reach a Consumer through an
// object it affects.
std::vector<std::string> producer_warnings(const ERModel& m,
                                           const std::map<std::string, ft::Distinction>& dist) {
  std::map<std::string, std::set<std::string>> adjacent;
  for (const auto& r : m.relations()) {
    adjacent[r.source].insert(r.target);
    adjacent[r.target].insert(r.source);
  }
  std::vector<std::string> out;
  for (const auto& [label, d] : dist) {
    if (d != ft::Distinction::Producer) continue;
    bool acts = false;
    for (const auto& r : m.relations())
      if (r.source == label && r.grounding == ft::RelationKind::FunctionAction) acts = true;
    if (!acts) out.push_back("producer '" + label + "' has no FunctionAction relation");

    // States are (node, passed through an object).
    std::set<std::pair<std::string, bool>> seen{{label, false}};
    std::deque<std::pair<std::string, bool>> queue{{label, false}};
    bool consumer = false;
    while (!queue.empty() && !consumer) {
      auto [cur, via_object] = queue.front();
      queue.pop_front();
      for (const auto& next : adjacent[cur]) {
        bool via = via_object || dist.at(next) == ft::Distinction::Object;
        if (via_object && dist.at(next) == ft::Distinction::Consumer) consumer = true;
        if (seen.insert({next, via}).second) queue.emplace_back(next, via);
      }
    }
    if (!consumer)
      out.push_back("producer '" + label + "' reaches no consumer through an affected object");
  }
  return out;
}

}  // namespace

GroundedDomainModel ground_to_ft(const ETG& etg,
                                 const std::map<std::string, ft::Distinction>& refinements) {
  GroundedDomainModel g;
  ERModel model = etg.model();
  for (const auto& [label, n] : model.nodes()) g.nodes[label] = hierarchy_distinction(n.kind);
  for (const auto& [raw, d] : refinements) {
    std::string label = normalize_lemma(raw);
    const ERNode* n = model.find(label);
    if (!n) throw Error(ErrorCode::DanglingRelation, "refinement names unknown node '" + label + "'");
    if (n->kind != ConceptKind::Function ||
        (d != ft::Distinction::Producer && d != ft::Distinction::Consumer))
      throw Error(ErrorCode::KindMismatch, "only function nodes refine, to Producer or Consumer; '" +
                                               label + "' is " +
                                               std::string(cq::to_string(n->kind)));
    g.nodes[label] = d;
  }
  std::vector<std::string> ungroundable;
  for (auto& r : model.relations()) {
    auto s = g.nodes.at(r.source);
    auto t = g.nodes.at(r.target);
    r.grounding = ft::relation_kind_for(s, t);
    if (!r.grounding)
      ungroundable.push_back(r.name + ": " + r.source + " (" + std::string(ft::to_string(s)) +
                             ") -> " + r.target + " (" + std::string(ft::to_string(t)) + ")");
  }
  if (!ungroundable.empty())
    throw Error(ErrorCode::UngroundableRelation,
                std::to_string(ungroundable.size()) + " relation(s) fit no foundational relation",
                ungroundable);
  g.warnings = producer_warnings(model, g.nodes);
  g.etg = ETG(std::move(model));
  return g;
}

std::vector<std::string> grounding_violations(const GroundedDomainModel& model) {
  std::vector<std::string> out;
  for (const auto& r : model.etg.model().relations()) {
    auto s = model.nodes.find(r.source);
    auto t = model.nodes.find(r.target);
    if (s == model.nodes.end() || t == model.nodes.end()) {
      out.push_back(r.name + ": endpoint has no distinction");
      continue;
    }
    if (ft::relation_kind_for(s->second, t->second) != r.grounding)
      out.push_back(r.name + ": grounding disagrees with " + std::string(ft::to_string(s->second)) +
                    " -> " + std::string(ft::to_string(t->second)));
  }
  for (const auto& [label, n] : model.etg.model().nodes()) {
    auto d = model.nodes.find(label);
    if (d == model.nodes.end() || !ft::subsumes(hierarchy_distinction(n.kind), d->second))
      out.push_back(label + ": distinction outside its hierarchy");
  }
  return out;
}

}  // namespace ontokit
