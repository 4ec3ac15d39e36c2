#include "ontokit/ontology.hpp"

#include <algorithm>
#include <optional>
#include <queue>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

const ConceptCandidate& Hierarchy::node(std::string_view iri) const {
  auto it = nodes_.find(iri);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownGid, "no node <" + std::string(iri) + "> in hierarchy");
  return it->second;
}

std::size_t Hierarchy::edge_count() const {
  std::size_t n = 0;
  for (const auto& [iri, c] : nodes_) n += c.parents.size();
  return n;
}

std::vector<std::string> Hierarchy::roots() const {
  std::vector<std::string> out;
  for (const auto& [iri, c] : nodes_)
    if (c.parents.empty()) out.push_back(iri);
  return out;
}

std::vector<std::string> Hierarchy::children(std::string_view iri) const {
  std::vector<std::string> out;
  for (const auto& [child, c] : nodes_)
    if (std::find(c.parents.begin(), c.parents.end(), iri) != c.parents.end())
      out.push_back(child);
  return out;
}

void Hierarchy::insert(ConceptCandidate candidate) {
  candidate.kind = kind_;
  std::string key = candidate.iri;
  nodes_.insert_or_assign(std::move(key), std::move(candidate));
}

void Hierarchy::check_acyclic() const {
  std::map<std::string_view, std::size_t> pending;
  std::map<std::string_view, std::vector<std::string_view>> kids;
  std::vector<std::string_view> ready;
  for (const auto& [iri, c] : nodes_) {
    std::size_t n = 0;
    for (const auto& p : c.parents)
      if (nodes_.count(p)) {
        ++n;
        kids[p].push_back(iri);
      }
    pending[iri] = n;
    if (n == 0) ready.push_back(iri);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    auto iri = ready.back();
    ready.pop_back();
    ++done;
    for (auto k : kids[iri])
      if (--pending[k] == 0) ready.push_back(k);
  }
  if (done == nodes_.size()) return;

  // Nodes left over are on a cycle or below one; keep those that reach
  // themselves.
  std::vector<std::string> offending;
  for (const auto& [iri, n] : pending) {
    if (n == 0) continue;
    std::set<std::string_view> seen;
    std::vector<std::string_view> stack;
    for (const auto& p : nodes_.find(iri)->second.parents)
      if (nodes_.count(p)) stack.push_back(p);
    bool cyclic = false;
    while (!stack.empty() && !cyclic) {
      auto cur = stack.back();
      stack.pop_back();
      if (cur == iri) cyclic = true;
      if (!seen.insert(cur).second) continue;
      for (const auto& p : nodes_.find(cur)->second.parents)
        if (nodes_.count(p)) stack.push_back(p);
    }
    if (cyclic) offending.emplace_back(iri);
  }
  throw Error(ErrorCode::CyclicHierarchy,
              std::string(to_string(kind_)) + " hierarchy contains a cycle", offending);
}

const Hierarchy& InformalOntology::hierarchy(HierarchyKind kind) const {
  switch (kind) {
    case HierarchyKind::Class: return classes;
    case HierarchyKind::ObjectProperty: return object_properties;
    case HierarchyKind::DataProperty: return data_properties;
  }
  return classes;
}

Hierarchy& InformalOntology::hierarchy(HierarchyKind kind) {
  return const_cast<Hierarchy&>(std::as_const(*this).hierarchy(kind));
}

namespace {

bool is_builtin(std::string_view iri) {
  for (auto ns : {rdf::kRdf, rdf::kRdfs, rdf::kOwl, rdf::kXsd})
    if (iri.substr(0, ns.size()) == ns) return true;
  return false;
}

struct NodeFacts {
  std::optional<HierarchyKind> declared;
  bool subclass_role = false;
  bool subproperty_role = false;
  bool generic_property = false;
  std::vector<std::string> class_parents;
  std::vector<std::string> property_parents;
  std::vector<const rdf::Term*> labels;
  std::vector<const rdf::Term*> comments;
  std::vector<const rdf::Term*> definitions;
  std::vector<std::string> domains;
  std::vector<std::string> ranges;
};

std::optional<HierarchyKind> declared_kind(std::string_view type) {
  if (type == rdf::owl("Class") || type == rdf::rdfs("Class")) return HierarchyKind::Class;
  if (type == rdf::owl("ObjectProperty") || type == rdf::owl("TransitiveProperty") ||
      type == rdf::owl("SymmetricProperty") || type == rdf::owl("InverseFunctionalProperty") ||
      type == rdf::owl("AsymmetricProperty") || type == rdf::owl("ReflexiveProperty") ||
      type == rdf::owl("IrreflexiveProperty"))
    return HierarchyKind::ObjectProperty;
  if (type == rdf::owl("DatatypeProperty")) return HierarchyKind::DataProperty;
  return std::nullopt;
}

int kind_priority(HierarchyKind k) {
  switch (k) {
    case HierarchyKind::Class: return 0;
    case HierarchyKind::ObjectProperty: return 1;
    case HierarchyKind::DataProperty: return 2;
  }
  return 3;
}

const rdf::Term* pick_label(const std::vector<const rdf::Term*>& labels,
                            std::string_view language) {
  const rdf::Term* untagged = nullptr;
  const rdf::Term* smallest = nullptr;
  for (const auto* t : labels) {
    if (t->language == language) return t;
    if (t->language.empty() && !untagged) untagged = t;
    if (!smallest || t->language < smallest->language) smallest = t;
  }
  return untagged ? untagged : smallest;
}

void append_text(std::string& gloss, const std::vector<const rdf::Term*>& literals,
                 std::string_view language) {
  bool any_matching = std::any_of(literals.begin(), literals.end(), [&](const auto* t) {
    return t->language.empty() || t->language == language;
  });
  for (const auto* t : literals) {
    if (any_matching && !(t->language.empty() || t->language == language)) continue;
    std::string text = normalize_whitespace(t->value);
    if (text.empty()) continue;
    if (!gloss.empty()) gloss.push_back(' ');
    gloss += text;
  }
}

}  // namespace

InformalOntology ontology_from_document(rdf::Document document, const IngestOptions& options) {
  InformalOntology onto;
  onto.document = std::move(document);
  const auto& triples = onto.document.triples;

  const std::string type = rdf::rdf("type");
  const std::string sub_class = rdf::rdfs("subClassOf");
  const std::string sub_prop = rdf::rdfs("subPropertyOf");
  const std::string label = rdf::rdfs("label");
  const std::string comment = rdf::rdfs("comment");
  const std::string defined_by = rdf::rdfs("isDefinedBy");
  const std::string domain = rdf::rdfs("domain");
  const std::string range = rdf::rdfs("range");

  std::map<std::string, NodeFacts> facts;
  std::vector<std::string> order;
  auto fact = [&](const std::string& iri) -> NodeFacts& {
    auto [it, inserted] = facts.try_emplace(iri);
    if (inserted) order.push_back(iri);
    return it->second;
  };

  for (const auto& t : triples) {
    if (!t.subject.is_iri()) continue;
    const std::string& s = t.subject.value;
    const std::string& p = t.predicate.value;
    if (p == type && t.object.is_iri() && t.object.value == rdf::owl("Ontology")) {
      if (onto.iri.empty()) onto.iri = s;
      continue;
    }
    if (p == rdf::owl("imports") && t.object.is_iri()) {
      onto.imports.insert(t.object.value);
      continue;
    }
    if (is_builtin(s)) continue;
    if (p == type && t.object.is_iri()) {
      if (auto k = declared_kind(t.object.value)) {
        auto& f = fact(s);
        if (!f.declared || kind_priority(*k) < kind_priority(*f.declared)) f.declared = k;
      } else if (t.object.value == rdf::rdf("Property")) {
        fact(s).generic_property = true;
      }
    } else if (p == sub_class && t.object.is_iri()) {
      auto& f = fact(s);
      f.subclass_role = true;
      if (t.object.value != s && !is_builtin(t.object.value)) {
        f.class_parents.push_back(t.object.value);
        fact(t.object.value).subclass_role = true;
      }
    } else if (p == sub_prop && t.object.is_iri()) {
      auto& f = fact(s);
      f.subproperty_role = true;
      if (t.object.value != s && !is_builtin(t.object.value)) {
        f.property_parents.push_back(t.object.value);
        fact(t.object.value).subproperty_role = true;
      }
    } else if (p == label && t.object.is_literal()) {
      fact(s).labels.push_back(&t.object);
    } else if (p == comment && t.object.is_literal()) {
      fact(s).comments.push_back(&t.object);
    } else if (p == defined_by && t.object.is_literal()) {
      fact(s).definitions.push_back(&t.object);
    } else if (p == domain && t.object.is_iri()) {
      fact(s).domains.push_back(t.object.value);
    } else if (p == range && t.object.is_iri()) {
      fact(s).ranges.push_back(t.object.value);
    }
  }
  if (onto.iri.empty()) onto.iri = onto.document.base;

  // Resolve hierarchy membership. Declarations win; undeclared properties
  // inherit the kind of a declared relative through subPropertyOf.
  std::map<std::string, HierarchyKind> kind_of;
  for (const auto& iri : order) {
    const auto& f = facts[iri];
    if (f.declared) kind_of[iri] = *f.declared;
    else if (f.subclass_role) kind_of[iri] = HierarchyKind::Class;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& iri : order) {
      const auto& f = facts[iri];
      if (kind_of.count(iri) || !f.subproperty_role) continue;
      for (const auto& p : f.property_parents) {
        auto it = kind_of.find(p);
        if (it != kind_of.end() && it->second != HierarchyKind::Class) {
          kind_of[iri] = it->second;
          changed = true;
          break;
        }
      }
      if (kind_of.count(iri)) continue;
      for (const auto& [other, of] : facts) {
        if (std::find(of.property_parents.begin(), of.property_parents.end(), iri) ==
            of.property_parents.end())
          continue;
        auto it = kind_of.find(other);
        if (it != kind_of.end() && it->second != HierarchyKind::Class) {
          kind_of[iri] = it->second;
          changed = true;
          break;
        }
      }
    }
  }
  for (const auto& iri : order) {
    const auto& f = facts[iri];
    if (!kind_of.count(iri) && (f.subproperty_role || f.generic_property))
      kind_of[iri] = HierarchyKind::ObjectProperty;
  }

  for (const auto& iri : order) {
    auto k = kind_of.find(iri);
    if (k == kind_of.end()) continue;
    const auto& f = facts[iri];
    ConceptCandidate c;
    c.iri = iri;
    for (const auto* l : f.labels) c.labels.try_emplace(l->language, normalize_whitespace(l->value));
    if (const auto* chosen = pick_label(f.labels, options.language)) {
      c.label = normalize_whitespace(chosen->value);
      c.language = chosen->language.empty() ? options.language : chosen->language;
    } else {
      c.label = rdf::local_name(iri);
      c.language = options.language;
    }
    append_text(c.gloss, f.comments, c.language);
    append_text(c.gloss, f.definitions, c.language);
    const auto& parents = k->second == HierarchyKind::Class ? f.class_parents : f.property_parents;
    for (const auto& p : parents) {
      auto pk = kind_of.find(p);
      if (pk != kind_of.end() && pk->second == k->second &&
          std::find(c.parents.begin(), c.parents.end(), p) == c.parents.end())
        c.parents.push_back(p);
    }
    c.domains = f.domains;
    c.ranges = f.ranges;
    onto.hierarchy(k->second).insert(std::move(c));
  }

  // Order parents by label so the primary parent is deterministic.
  for (auto kind : kAllHierarchyKinds) {
    Hierarchy& h = onto.hierarchy(kind);
    Hierarchy sorted(kind);
    for (const auto& [iri, node] : h.nodes()) {
      ConceptCandidate c = node;
      std::sort(c.parents.begin(), c.parents.end(), [&](const auto& a, const auto& b) {
        return std::tie(h.node(a).label, a) < std::tie(h.node(b).label, b);
      });
      sorted.insert(std::move(c));
    }
    h = std::move(sorted);
    h.check_acyclic();
  }
  return onto;
}

InformalOntology parse_ontology(std::string_view document, std::string_view base_iri,
                                const IngestOptions& options) {
  return ontology_from_document(rdf::parse_turtle(document, base_iri), options);
}

std::vector<ConceptCandidate> iterate_top_down(const Hierarchy& hierarchy) {
  using Key = std::pair<std::string, std::string>;
  std::map<std::string_view, std::size_t> pending;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (const auto& [iri, c] : hierarchy.nodes()) {
    pending[iri] = c.parents.size();
    if (c.parents.empty()) ready.push({c.label, iri});
  }
  std::map<std::string_view, std::vector<std::string_view>> kids;
  for (const auto& [iri, c] : hierarchy.nodes())
    for (const auto& p : c.parents) kids[p].push_back(iri);

  std::vector<ConceptCandidate> out;
  out.reserve(hierarchy.size());
  while (!ready.empty()) {
    auto [lbl, iri] = ready.top();
    ready.pop();
    out.push_back(hierarchy.node(iri));
    auto it = kids.find(iri);  // no operator[]: it would key on the local string
    if (it == kids.end()) continue;
    for (auto k : it->second)
      if (--pending[k] == 0) ready.push({hierarchy.node(k).label, std::string(k)});
  }
  if (out.size() != hierarchy.size()) hierarchy.check_acyclic();
  return out;
}

std::vector<ConceptCandidate> iterate_top_down(const InformalOntology& ontology,
                                               HierarchyKind kind) {
  return iterate_top_down(ontology.hierarchy(kind));
}

}  // namespace ontokit
