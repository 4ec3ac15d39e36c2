#pragma once

// Hand-rolled generators and brute-force oracles shared by the unit tests and
// the acceptance runner. Every check returns its failures as text; an empty
// vector means the property held.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ontokit/annotation.hpp"
#include "ontokit/catalog.hpp"
#include "ontokit/cq_pipeline.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/ontology.hpp"
#include "ontokit/teleology.hpp"

namespace testing_support {

using Failures = std::vector<std::string>;
using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------- DAG safety

inline bool dfs_reaches(const std::map<std::int64_t, std::set<std::int64_t>>& parents,
                        std::int64_t from, std::int64_t to) {
  std::vector<std::int64_t> stack{from};
  std::set<std::int64_t> seen;
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    if (cur == to) return true;
    if (!seen.insert(cur).second) continue;
    if (auto it = parents.find(cur); it != parents.end())
      for (auto p : it->second) stack.push_back(p);
  }
  return false;
}

// One random create/add_hypernym sequence. Rejections must be exactly the
// edges the oracle calls cycle-forming; topological order must respect every
// edge afterwards.
inline Failures check_dag_sequence(std::uint64_t seed, int steps = 40) {
  Rng rng(seed);
  Failures fails;
  ontokit::KnowledgeCore core;
  std::map<std::int64_t, std::set<std::int64_t>> oracle;
  std::vector<ontokit::Gid> nodes;
  for (int step = 0; step < steps; ++step) {
    if (nodes.size() < 2 || coin(rng, 0.3)) {
      std::set<ontokit::Gid> parents;
      if (!nodes.empty() && coin(rng)) parents.insert(nodes[pick(rng, nodes.size())]);
      auto g = core.create_concept(parents, "node " + std::to_string(step));
      for (auto p : parents) oracle[g.value()].insert(p.value());
      nodes.push_back(g);
      continue;
    }
    auto child = nodes[pick(rng, nodes.size())];
    auto parent = nodes[pick(rng, nodes.size())];
    bool cyclic = child == parent || dfs_reaches(oracle, parent.value(), child.value());
    try {
      core.add_hypernym(child, parent);
      if (cyclic)
        fails.push_back("seed " + std::to_string(seed) + ": accepted cycle-forming edge " +
                        to_string(child) + " -> " + to_string(parent));
      oracle[child.value()].insert(parent.value());
    } catch (const ontokit::Error& e) {
      if (e.code() != ontokit::ErrorCode::CycleDetected || !cyclic)
        fails.push_back("seed " + std::to_string(seed) + ": rejected edge " + to_string(child) +
                        " -> " + to_string(parent) + ": " + e.what());
    }
  }
  auto order = core.topological_order();
  if (order.size() != core.size()) fails.push_back("topological order is incomplete");
  std::map<ontokit::Gid, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& [gid, c] : core.concepts())
    for (auto p : c.parents)
      if (pos.at(p) >= pos.at(gid))
        fails.push_back("parent " + to_string(p) + " sorted after " + to_string(gid));
  return fails;
}

// ------------------------------------------------------ placeholder discipline

inline const std::vector<std::string>& label_pool() {
  static const std::vector<std::string> pool = {
      "alpha", "beta",  "gamma", "delta",   "epsilon", "zeta",  "eta",   "theta",
      "iota",  "kappa", "lambda", "mu",     "nu",      "xi",    "omicron", "pi",
      "rho",   "sigma", "tau",   "upsilon", "phi",     "chi",   "psi",   "omega"};
  return pool;
}

struct OntologyCorePair {
  ontokit::InformalOntology ontology;
  ontokit::KnowledgeCore core;
};

// A random core whose lemmas come from the label pool, and a random ontology
// over the same pool, so some candidates match and some do not.
inline OntologyCorePair random_ontology_core_pair(Rng& rng) {
  const auto& pool = label_pool();
  OntologyCorePair out;
  auto& core = out.core;
  ontokit::Gid root = core.create_concept({}, "the root of everything");
  core.attach_sense(root, "en", "entity", 1);
  std::vector<ontokit::Gid> gids{root};
  std::size_t ncore = 1 + pick(rng, 10);
  for (std::size_t i = 0; i < ncore; ++i) {
    auto g = core.create_concept({gids[pick(rng, gids.size())]}, "core concept " + std::to_string(i));
    auto first = pick(rng, pool.size());
    core.attach_sense(g, "en", pool[first], 1);
    if (coin(rng, 0.3)) core.attach_sense(g, "en", pool[(first + 1 + pick(rng, pool.size() - 1)) % pool.size()], 1);
    gids.push_back(g);
  }

  std::ostringstream ttl;
  ttl << "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
         "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
         "@prefix g: <http://example.org/gen#> .\n";
  std::vector<std::string> labels = pool;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::size_t n = 1 + pick(rng, 12);
  const char* types[] = {"owl:Class", "owl:ObjectProperty", "owl:DatatypeProperty"};
  const char* sub[] = {"rdfs:subClassOf", "rdfs:subPropertyOf", "rdfs:subPropertyOf"};
  std::vector<std::size_t> kind_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    kind_of[i] = coin(rng, 0.6) ? 0 : 1 + pick(rng, 2);
    ttl << "g:c" << i << " a " << types[kind_of[i]] << " ; rdfs:label \"" << labels[i]
        << "\"@en ; rdfs:comment \"generated concept\"";
    // Parents only point backwards, so the hierarchy is acyclic.
    for (std::size_t j = 0; j < i; ++j)
      if (kind_of[j] == kind_of[i] && coin(rng, 0.3)) ttl << " ; " << sub[kind_of[i]] << " g:c" << j;
    ttl << " .\n";
  }
  out.ontology = ontokit::parse_ontology(ttl.str(), "http://example.org/gen");
  return out;
}

// Random expert: accept some hit when there is one, else (or sometimes
// anyway) a new concept whose gloss names the parent; rarely skip.
inline ontokit::AnnotationSheet random_annotation(const OntologyCorePair& pair, Rng& rng) {
  ontokit::AnnotateOptions opts;
  opts.default_parent = ontokit::Gid(1);
  ontokit::AnnotationSession s(pair.ontology, pair.core, opts);
  while (!s.done()) {
    const auto& hits = s.current_hits();
    if (coin(rng, 0.05)) {
      s.decide(ontokit::Decision::skip());
    } else if (!hits.empty() && coin(rng, 0.7)) {
      s.decide(ontokit::Decision::accept(hits[pick(rng, hits.size())].gid));
    } else {
      std::string genus = s.current_parent_label().empty() ? "thing" : s.current_parent_label();
      s.decide(ontokit::Decision::new_concept("a " + genus + " with the trait " +
                                              std::to_string(rng() % 1000) + " marked"));
    }
  }
  return s.sheet();
}

// Breaks the placeholder sequence of a sheet that has at least one placeholder.
inline ontokit::AnnotationSheet corrupt_placeholders(ontokit::AnnotationSheet sheet, Rng& rng) {
  std::vector<std::size_t> news;
  for (std::size_t i = 0; i < sheet.records.size(); ++i)
    if (sheet.records[i].is_new()) news.push_back(i);
  auto& r = sheet.records[news[pick(rng, news.size())]];
  auto old = r.gid();
  ontokit::Gid replacement;
  switch (pick(rng, 3)) {
    case 0: replacement = ontokit::Gid(old.value() - 1 - std::int64_t(news.size())); break;  // gap
    case 1: replacement = ontokit::Gid(old.value() == -1 ? -2 : -1); break;  // duplicate/swap
    default: replacement = ontokit::Gid(0); break;  // not a placeholder
  }
  r.outcome = ontokit::NoSynonymousMatch{replacement};
  // Children referring to the old placeholder follow it, so only the
  // sequencing rule can fire.
  for (auto& other : sheet.records)
    if (other.parent_gid == old) other.parent_gid = replacement;
  return sheet;
}

inline Failures check_placeholder_discipline(std::uint64_t seed) {
  Rng rng(seed);
  Failures fails;
  auto tag = "seed " + std::to_string(seed) + ": ";
  auto pair = random_ontology_core_pair(rng);
  auto sheet = random_annotation(pair, rng);

  std::vector<std::int64_t> placeholders;
  for (const auto& r : sheet.records)
    if (r.is_new()) placeholders.push_back(r.gid().value());
  for (std::size_t i = 0; i < placeholders.size(); ++i)
    if (placeholders[i] != -static_cast<std::int64_t>(i) - 1)
      fails.push_back(tag + "placeholder " + std::to_string(placeholders[i]) + " at position " +
                      std::to_string(i));

  auto before = ontokit::snapshot_text(pair.core);
  try {
    ontokit::KnowledgeCore target = pair.core;
    auto mapping = ontokit::import_sheet(sheet, target);
    if (mapping.size() != placeholders.size()) fails.push_back(tag + "mapping is incomplete");
  } catch (const ontokit::Error& e) {
    fails.push_back(tag + "generated sheet rejected: " + e.what());
  }

  if (placeholders.empty()) return fails;
  auto bad = corrupt_placeholders(sheet, rng);
  try {
    ontokit::KnowledgeCore target = pair.core;
    ontokit::import_sheet(bad, target);
    fails.push_back(tag + "import accepted a broken placeholder sequence");
  } catch (const ontokit::Error& e) {
    if (e.code() != ontokit::ErrorCode::ValidationFailed)
      fails.push_back(tag + "unexpected error " + e.what());
  }
  ontokit::KnowledgeCore target = pair.core;
  try {
    ontokit::import_sheet(bad, target);
  } catch (const ontokit::Error&) {
  }
  if (ontokit::snapshot_text(target) != before) fails.push_back(tag + "core changed by a rejected import");
  return fails;
}

// ------------------------------------------------------------- FT relations

// Enumerates, for each foundational relation, every (domain, range) pair its
// signature admits, by walking all distinctions and checking ancestry by
// repeated parent steps rather than through ft::subsumes.
inline std::map<std::pair<ontokit::ft::Distinction, ontokit::ft::Distinction>,
                std::set<ontokit::ft::RelationKind>>
enumerate_signatures() {
  using namespace ontokit::ft;
  auto below = [](Distinction upper) {
    std::set<Distinction> out;
    for (auto d : kAllDistinctions) {
      std::vector<Distinction> chain{d};
      while (auto p = parent_of(chain.back())) chain.push_back(*p);
      if (std::find(chain.begin(), chain.end(), upper) != chain.end()) out.insert(d);
    }
    return out;
  };
  std::map<std::pair<Distinction, Distinction>, std::set<RelationKind>> out;
  for (auto kind : kAllRelationKinds)
    for (auto d : below(signature(kind).domain))
      for (auto r : below(signature(kind).range)) out[{d, r}].insert(kind);
  return out;
}

inline Failures check_ft_exhaustive() {
  using namespace ontokit::ft;
  Failures fails;
  auto table = enumerate_signatures();
  std::size_t pairs = 0;
  for (auto d : kAllDistinctions)
    for (auto r : kAllDistinctions) {
      ++pairs;
      auto got = relation_kind_for(d, r);
      auto it = table.find({d, r});
      std::string name = std::string(to_string(d)) + " x " + std::string(to_string(r));
      if (it == table.end()) {
        if (got) fails.push_back(name + ": expected none, got " + std::string(to_string(*got)));
        continue;
      }
      if (it->second.size() != 1) fails.push_back(name + ": signatures overlap");
      if (!got || *got != *it->second.begin())
        fails.push_back(name + ": expected " + std::string(to_string(*it->second.begin())));
    }
  if (pairs != 36) fails.push_back("enumerated " + std::to_string(pairs) + " pairs");

  for (auto a : kAllDistinctions) {
    if (!subsumes(a, a)) fails.push_back("subsumes is not reflexive");
    for (auto b : kAllDistinctions) {
      if (a != b && subsumes(a, b) && subsumes(b, a)) fails.push_back("subsumes is not antisymmetric");
      for (auto c : kAllDistinctions)
        if (subsumes(a, b) && subsumes(b, c) && !subsumes(a, c))
          fails.push_back("subsumes is not transitive");
    }
  }
  return fails;
}

// --------------------------------------------------------- catalog ranking

// Counts references by scanning every triple of every other document for an
// IRI starting with the entry's namespace; each referencing document counts
// once. Namespaces nested inside others go to the longest match.
inline std::vector<std::size_t> brute_force_links(const std::vector<ontokit::CatalogEntry>& entries,
                                                  const std::vector<ontokit::rdf::Document>& docs) {
  std::vector<std::size_t> links(entries.size(), 0);
  for (std::size_t src = 0; src < docs.size(); ++src) {
    std::set<std::size_t> hit;
    auto visit = [&](const ontokit::rdf::Term& t) {
      if (!t.is_iri()) return;
      std::size_t best = entries.size(), best_len = 0;
      for (std::size_t e = 0; e < entries.size(); ++e)
        if (ontokit::in_namespace(t.value, entries[e].iri) && entries[e].iri.size() > best_len) {
          best = e;
          best_len = entries[e].iri.size();
        }
      if (best != entries.size() && best != src) hit.insert(best);
    };
    for (const auto& tr : docs[src].triples) {
      visit(tr.subject);
      visit(tr.predicate);
      visit(tr.object);
    }
    for (auto e : hit) ++links[e];
  }
  return links;
}

// Ordering oracle: selection by (links desc, IRI asc), done by repeated
// linear scans.
inline std::vector<std::string> brute_force_order(const std::vector<ontokit::CatalogEntry>& entries,
                                                  const std::vector<std::size_t>& links) {
  std::vector<bool> used(entries.size(), false);
  std::vector<std::string> out;
  for (std::size_t round = 0; round < entries.size(); ++round) {
    std::size_t best = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (used[i]) continue;
      if (best == entries.size() || links[i] > links[best] ||
          (links[i] == links[best] && entries[i].iri < entries[best].iri))
        best = i;
    }
    used[best] = true;
    out.push_back(entries[best].iri);
  }
  return out;
}

// ------------------------------------------------------- CQ monotonicity

struct RandomCqInput {
  std::vector<ontokit::cq::CompetencyQuestion> cqs;
  ontokit::cq::CqDecisions decisions;
};

inline RandomCqInput random_cq_input(Rng& rng) {
  static const std::vector<std::string> words = {
      "which", "malga", "near", "trento", "offers", "accommodation", "the", "a",
      "tourist", "hotel", "city", "season", "year", "guide", "book", "of", "in",
      "ski", "resort", "facility", "what", "where", "has", "professor", "teach"};
  RandomCqInput in;
  std::size_t n = 1 + pick(rng, 4);
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    std::size_t len = 1 + pick(rng, 8);
    for (std::size_t k = 0; k < len; ++k) text += (k ? " " : "") + words[pick(rng, words.size())];
    in.cqs.push_back({"Q" + std::to_string(i), text + "?"});
    if (coin(rng, 0.4)) in.decisions.latent["Q" + std::to_string(i)] = {words[pick(rng, words.size())]};
  }
  in.decisions.phrases.add("ski resort");
  const ontokit::cq::Facet facets[] = {ontokit::cq::Facet::CommonSpace, ontokit::cq::Facet::CommonTime,
                                       ontokit::cq::Facet::Core, ontokit::cq::Facet::Contextual};
  const ontokit::cq::ConceptKind kinds[] = {ontokit::cq::ConceptKind::Object,
                                            ontokit::cq::ConceptKind::Function,
                                            ontokit::cq::ConceptKind::Action};
  for (const auto& w : words) {
    if (coin(rng, 0.2)) in.decisions.facets[w] = facets[pick(rng, 4)];
    in.decisions.kinds[w] = kinds[pick(rng, 3)];
    if (coin(rng, 0.2))
      in.decisions.properties[w].push_back(
          coin(rng) ? ontokit::cq::PropertySpec{"size", ontokit::cq::PropertyKind::DataProperty, "xsd:integer"}
                    : ontokit::cq::PropertySpec{"near", ontokit::cq::PropertyKind::ObjectProperty,
                                                words[pick(rng, words.size())]});
  }
  in.decisions.kinds["ski resort"] = ontokit::cq::ConceptKind::Object;
  return in;
}

// Random inputs are run stage by stage; every intermediate StagedCQ must be
// monotone, and every stage must only name labels of its predecessor.
inline Failures check_cq_monotonicity(std::uint64_t seed, const ontokit::KnowledgeCore& core) {
  using namespace ontokit::cq;
  Rng rng(seed);
  Failures fails;
  auto in = random_cq_input(rng);
  AnalysisOptions opts;
  opts.space = ontokit::Gid(2);
  opts.time = ontokit::Gid(3);
  auto tag = "seed " + std::to_string(seed) + ": ";
  for (const auto& q : in.cqs) {
    StagedCQ cq{q.id, q.text};
    auto latent_it = in.decisions.latent.find(q.id);
    std::vector<std::string> latent;
    if (latent_it != in.decisions.latent.end()) latent = latent_it->second;
    StagedCQ k;
    try {
      k = to_kernel(cq, ontokit::StopwordList::english(), in.decisions.phrases, latent);
    } catch (const ontokit::Error& e) {
      if (e.code() != ontokit::ErrorCode::EmptyKernel) fails.push_back(tag + e.what());
      continue;
    }
    auto a = to_analyzed(k, core, opts, in.decisions.facets);
    auto c = to_classified(a, in.decisions.kinds);
    auto t = to_attributed(c, in.decisions.properties, [](std::string_view) { return true; });
    for (const auto* s : {&k, &a, &c, &t})
      for (const auto& v : monotonicity_violations(*s))
        fails.push_back(tag + q.id + " at " + std::string(to_string(s->stage)) + ": " + v);
    std::set<std::string> kernel;
    for (const auto& l : k.kernel) kernel.insert(l.text);
    for (const auto& [label, f] : a.analyzed)
      if (!kernel.count(label)) fails.push_back(tag + "analyzed label outside kernel: " + label);
    for (const auto& [label, kind] : c.classified)
      if (!a.analyzed.count(label)) fails.push_back(tag + "classified label outside analysis: " + label);
    for (const auto& [label, props] : t.attributed)
      if (!c.classified.count(label)) fails.push_back(tag + "attributed label unclassified: " + label);
    if (c.kernel != k.kernel || t.analyzed != a.analyzed || t.classified != c.classified)
      fails.push_back(tag + q.id + ": a later stage rewrote an earlier one");
  }
  return fails;
}

}  // namespace testing_support
