#include "ontokit/domain_export.hpp"

#include <cctype>
#include <set>

#include "ontokit/text.hpp"

namespace ontokit {

namespace {

std::string tk(std::string_view local) { return std::string(kOntokitVocab) + std::string(local); }

std::string camel(std::string_view label, bool upper_first) {
  std::string out;
  bool boundary = upper_first;
  for (unsigned char c : label) {
    if (std::isalnum(c) || c >= 0x80) {
      out += boundary && std::isalpha(c) ? static_cast<char>(std::toupper(c)) : static_cast<char>(c);
      boundary = false;
    } else {
      boundary = !out.empty() || upper_first;
    }
  }
  if (out.empty()) out = upper_first ? "Concept" : "property";
  if (std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(0, "_");
  return out;
}

class Minter {
 public:
  explicit Minter(std::string ns) : ns_(std::move(ns)) {}
  std::string mint(const std::string& local) {
    std::string name = local;
    for (int n = 2; !used_.insert(name).second; ++n) name = local + "_" + std::to_string(n);
    return ns_ + name;
  }
  const std::string& ns() const { return ns_; }

 private:
  std::string ns_;
  std::set<std::string> used_;
};

}  // namespace

std::string default_model_namespace(std::string_view domain) {
  std::string slug;
  for (unsigned char c : fold_case(domain)) {
    if (std::isalnum(c))
      slug += static_cast<char>(c);
    else if (!slug.empty() && slug.back() != '-')
      slug += '-';
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  if (slug.empty()) slug = "model";
  return "urn:ontokit:model:" + slug + "#";
}

rdf::Document export_domain_model(const GroundedDomainModel& model,
                                  const ExportOptions& options) {
  using rdf::Term;
  const ERModel& m = model.etg.model();
  std::string ns = options.base.empty() ? default_model_namespace(m.context.domain) : options.base;
  rdf::Document doc;
  doc.prefixes = {{"rdf", std::string(rdf::kRdf)},   {"rdfs", std::string(rdf::kRdfs)},
                  {"owl", std::string(rdf::kOwl)},   {"xsd", std::string(rdf::kXsd)},
                  {"tk", std::string(kOntokitVocab)}, {"dm", ns}};
  auto add = [&](const Term& s, std::string p, Term o) {
    doc.triples.push_back({s, Term::iri(std::move(p)), std::move(o)});
  };
  auto text = [&](std::string s) { return Term::literal(std::move(s), options.language); };

  std::string onto_iri = ns;
  if (!onto_iri.empty() && onto_iri.back() == '#') onto_iri.pop_back();
  Term onto = Term::iri(onto_iri);
  const auto& c = m.context;
  add(onto, rdf::rdf("type"), Term::iri(rdf::owl("Ontology")));
  if (!c.domain.empty()) add(onto, tk("contextDomain"), Term::literal(c.domain));
  if (!c.spatial_scope.empty()) add(onto, tk("spatialScope"), Term::literal(c.spatial_scope));
  if (c.start)
    add(onto, tk("temporalStart"), Term::literal(ft::format_date(*c.start), {}, rdf::xsd("date")));
  if (c.end)
    add(onto, tk("temporalEnd"), Term::literal(ft::format_date(*c.end), {}, rdf::xsd("date")));

  Minter minter(ns);
  std::map<std::string, std::string> node_iri;
  for (const auto& label : m.top_down()) node_iri[label] = minter.mint(camel(label, true));
  for (const auto& label : m.top_down()) {
    const ERNode& n = m.node(label);
    Term s = Term::iri(node_iri.at(label));
    add(s, rdf::rdf("type"), Term::iri(rdf::owl("Class")));
    add(s, rdf::rdfs("label"), text(n.label));
    add(s, tk("gid"), Term::literal(to_string(n.gid), {}, rdf::xsd("integer")));
    add(s, tk("hierarchy"), Term::literal(std::string(cq::to_string(n.kind))));
    add(s, tk("groundedIn"), Term::iri(tk(ft::to_string(model.nodes.at(label)))));
    if (n.parent) add(s, rdf::rdfs("subClassOf"), Term::iri(node_iri.at(*n.parent)));
  }
  for (const auto& r : m.relations()) {
    Term s = Term::iri(minter.mint(camel(r.name, false)));
    add(s, rdf::rdf("type"), Term::iri(rdf::owl("ObjectProperty")));
    add(s, rdf::rdfs("label"), text(r.name));
    add(s, rdf::rdfs("domain"), Term::iri(node_iri.at(r.source)));
    add(s, rdf::rdfs("range"), Term::iri(node_iri.at(r.target)));
    if (r.grounding) add(s, tk("foundationalRelation"), Term::iri(tk(ft::to_string(*r.grounding))));
  }
  for (const auto& [label, specs] : m.attributions())
    for (const auto& p : specs) {
      Term s = Term::iri(minter.mint(camel(p.name, false)));
      bool object = p.kind == cq::PropertyKind::ObjectProperty;
      add(s, rdf::rdf("type"), Term::iri(rdf::owl(object ? "ObjectProperty" : "DatatypeProperty")));
      add(s, rdf::rdfs("label"), text(p.name));
      add(s, rdf::rdfs("domain"), Term::iri(node_iri.at(label)));
      std::string range;
      if (!object) {
        std::string_view dt = p.range;
        if (dt.substr(0, 4) == "xsd:") dt.remove_prefix(4);
        range = rdf::xsd(dt);
      } else if (auto it = node_iri.find(normalize_lemma(p.range)); it != node_iri.end()) {
        range = it->second;
      } else {
        range = ns + camel(p.range, true);
      }
      add(s, rdf::rdfs("range"), Term::iri(range));
    }
  return doc;
}

std::string export_turtle(const GroundedDomainModel& model, const ExportOptions& options) {
  return rdf::serialize_turtle(export_domain_model(model, options));
}

}  // namespace ontokit
