#include "ontokit/annotation.hpp"

#include "ontokit/sheet_csv.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace ontokit;
using testing_support::fixture_text;
using testing_support::seed_core;

namespace {

InformalOntology load(const std::string& rel, const std::string& base) {
  return parse_ontology(fixture_text(rel), base);
}

InformalOntology tourism() { return load("catalog/tourism.ttl", "http://example.org/tourism"); }

DecisionSource script(const std::string& rel) {
  return decisions_from(DecisionScript::parse(fixture_text(rel)));
}

AnnotateOptions rooted() {
  AnnotateOptions o;
  o.default_parent = Gid(1);
  return o;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST(Annotation, PersonProfessorAreBothMatches) {
  auto core = seed_core();
  auto o = load("ontologies/person_professor.ttl", "http://example.org/university");
  auto sheet = annotate(o, core, accept_first());
  ASSERT_EQ(sheet.records.size(), 2u);
  EXPECT_EQ(sheet.records[0].label, "Person");
  EXPECT_EQ(sheet.records[0].outcome, MatchOutcome(SynonymousMatch{Gid(5), 1}));
  EXPECT_EQ(sheet.records[1].outcome, MatchOutcome(SynonymousMatch{Gid(6), 1}));
  EXPECT_EQ(sheet.records[1].parent_gid, Gid(5));
  EXPECT_EQ(sheet.records[1].parent_label, "Person");
  EXPECT_EQ(sheet.new_concept_count(), 0u);
}

TEST(Annotation, MalgaIsNewUnderFacility) {
  auto core = seed_core();
  auto o = load("ontologies/facility_malga.ttl", "http://example.org/malga");
  auto sheet = annotate(o, core, script("ontologies/facility_malga.decisions"));
  ASSERT_EQ(sheet.records.size(), 2u);
  EXPECT_EQ(sheet.records[0].gid(), Gid(4));
  EXPECT_FALSE(sheet.records[0].is_new());
  const auto& malga = sheet.records[1];
  EXPECT_EQ(malga.outcome, MatchOutcome(NoSynonymousMatch{Gid(-1)}));
  EXPECT_EQ(malga.parent_gid, Gid(4));
  EXPECT_EQ(malga.gloss, "a malga is a facility in alpine pastures");
  EXPECT_TRUE(validate_sheet(sheet, core).empty());
}

TEST(Annotation, UnmatchedConceptsNumberFromMinusOne) {
  KnowledgeCore core;
  core.add_language("en");
  auto o = parse_ontology(
      "@prefix owl: <http://www.w3.org/2002/07/owl#> . @prefix e: <http://e.org/#> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "e:A a owl:Class ; rdfs:comment \"a\" . e:B a owl:Class ; rdfs:comment \"b\" .\n"
      "e:C a owl:Class ; rdfs:comment \"c\" .",
      "http://e.org/");
  auto sheet = annotate(o, core, accept_first());
  ASSERT_EQ(sheet.records.size(), 3u);
  for (std::int64_t i = 0; i < 3; ++i) EXPECT_EQ(sheet.records[i].gid(), Gid(-1 - i));
}

TEST(Annotation, MissingDecisionNamesTheLabel) {
  auto core = seed_core();
  try {
    annotate(tourism(), core, decisions_from(DecisionScript{}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingDecision);
    EXPECT_NE(std::string(e.what()).find("Facility"), std::string::npos);
  }
}

TEST(Annotation, DecideRejectsBadInput) {
  auto core = seed_core();
  AnnotationSession s(tourism(), core, rooted());
  EXPECT_EQ(s.current().label, "Facility");
  EXPECT_EQ(s.current_parent_gid(), Gid(1));
  EXPECT_ONTOKIT_ERROR(s.decide(Decision::new_concept("  ")), ErrorCode::MissingGloss);
  EXPECT_ONTOKIT_ERROR(s.decide(Decision::accept(Gid(12))), ErrorCode::InvalidDecision);
  EXPECT_ONTOKIT_ERROR(s.decide(Decision::accept(Gid(999), true)), ErrorCode::InvalidDecision);
  EXPECT_EQ(s.position(), 0u);
  s.decide(Decision::accept(Gid(12), true));  // override: hotel sense for facility
  EXPECT_EQ(s.sheet().records[0].wsr(), 2);
}

TEST(Annotation, SkippedParentsPassThrough) {
  auto core = seed_core();
  AnnotationSession s(tourism(), core, rooted());
  s.decide(Decision::skip());  // Facility
  EXPECT_EQ(s.current().label, "Hotel");
  EXPECT_EQ(s.current_parent_gid(), Gid(1));
  EXPECT_EQ(s.sheet().metadata.skipped, std::vector<std::string>{"class:Facility"});
}

TEST(Annotation, ValidationFlagsPlaceholderGap) {
  auto core = seed_core();
  auto sheet = parse_sheet(fixture_text("sheets/gap_placeholders.csv"));
  auto vs = validate_sheet(sheet, core);
  EXPECT_TRUE(has_kind(vs, ViolationKind::PlaceholderSequence));
  EXPECT_TRUE(has_errors(vs));
}

TEST(Annotation, ValidationFlagsGlossWithoutGenus) {
  auto core = seed_core();
  auto o = load("ontologies/facility_malga.ttl", "http://example.org/malga");
  AnnotationSession s(o, core);
  s.decide(Decision::accept(Gid(4)));
  s.decide(Decision::new_concept("a malga"));
  auto vs = validate_sheet(s.sheet(), core);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::GenusDifferentia);
  EXPECT_EQ(vs[0].record, 1u);
}

TEST(Annotation, GenusDifferentiaHeuristic) {
  EXPECT_TRUE(satisfies_genus_differentia("a malga is a facility in alpine pastures", "Malga",
                                          {"Facility"}));
  EXPECT_FALSE(satisfies_genus_differentia("a facility", "Malga", {"Facility"}));
  EXPECT_FALSE(satisfies_genus_differentia("shelter in the alps", "Hut", {"Facility"}));
  EXPECT_TRUE(satisfies_genus_differentia("an eating place with a view", "Terrace",
                                          {"restaurant", "eating place"}));
}

TEST(Annotation, FiveRecordFixtureSheetIsValid) {
  auto core = seed_core();
  auto sheet = parse_sheet(fixture_text("sheets/valid_five.csv"));
  ASSERT_EQ(sheet.records.size(), 5u);
  EXPECT_TRUE(validate_sheet(sheet, core).empty());
}

TEST(Annotation, DisputedParentIsOnlyAWarning) {
  auto core = seed_core();
  auto sheet = parse_sheet(fixture_text("sheets/valid_five.csv"));
  sheet.records[1].parent_label = "person";
  sheet.records[1].parent_gid = Gid(5);
  auto vs = validate_sheet(sheet, core);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::DisputedParent);
  EXPECT_TRUE(vs[0].warning);
  EXPECT_FALSE(has_errors(vs));
}

TEST(Annotation, ValidationFindsForwardAndUnknownReferences) {
  auto core = seed_core();
  auto sheet = parse_sheet(fixture_text("sheets/valid_five.csv"));
  std::swap(sheet.records[2], sheet.records[3]);
  sheet.records[2].outcome = NoSynonymousMatch{Gid(-1)};
  sheet.records[3].outcome = NoSynonymousMatch{Gid(-2)};
  sheet.records[2].parent_gid = Gid(-2);
  sheet.records[0].outcome = SynonymousMatch{Gid(77), 1};
  sheet.records[4].outcome = SynonymousMatch{Gid(2), 1};
  auto vs = validate_sheet(sheet, core);
  EXPECT_TRUE(has_kind(vs, ViolationKind::ForwardParentReference));
  EXPECT_TRUE(has_kind(vs, ViolationKind::UnknownGid));
  EXPECT_TRUE(has_kind(vs, ViolationKind::InvalidRank));
}

TEST(Annotation, ImportChainsPlaceholders) {
  auto core = seed_core();
  auto sheet = parse_sheet(fixture_text("sheets/valid_five.csv"));
  auto mapping = import_sheet(sheet, core);
  ASSERT_EQ(mapping.size(), 2u);
  Gid malga = mapping.at(Gid(-1)), alpine = mapping.at(Gid(-2));
  EXPECT_GT(alpine, malga);
  EXPECT_EQ(core.at(alpine).parents, std::set<Gid>{malga});
  EXPECT_EQ(core.at(malga).parents, std::set<Gid>{Gid(4)});
  EXPECT_EQ(core.search_synonymous("alpine malga", "en").at(0).gid, alpine);
  // Matches already carrying their label leave the synset alone.
  EXPECT_EQ(core.synset(Gid(4), "en")->words.size(), 2u);
}

TEST(Annotation, RejectedImportLeavesCoreByteIdentical) {
  auto core = seed_core();
  auto before = snapshot_text(core);
  auto sheet = parse_sheet(fixture_text("sheets/gap_placeholders.csv"));
  try {
    import_sheet(sheet, core);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
    ASSERT_FALSE(e.details().empty());
    EXPECT_NE(e.details()[0].find("PlaceholderSequence"), std::string::npos);
  }
  EXPECT_EQ(snapshot_text(core), before);
}

TEST(Annotation, EmptySheetImportsNothing) {
  auto core = seed_core();
  auto before = snapshot_text(core);
  EXPECT_TRUE(import_sheet(AnnotationSheet{}, core).empty());
  EXPECT_EQ(snapshot_text(core), before);
}

TEST(Annotation, ReannotationAfterImportIsAllMatches) {
  auto core = seed_core();
  auto o = tourism();
  auto first = annotate(o, core, script("workspace/decisions/tourism.txt"), rooted());
  EXPECT_EQ(first.new_concept_count(), 8u);
  auto mapping = import_sheet(first, core);
  auto second = annotate(o, core, accept_first(), rooted());
  ASSERT_EQ(second.records.size(), first.records.size());
  EXPECT_EQ(second.new_concept_count(), 0u);
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    Gid expected = first.records[i].is_new() ? mapping.at(first.records[i].gid())
                                             : first.records[i].gid();
    EXPECT_EQ(second.records[i].gid(), expected) << first.records[i].label;
  }
  EXPECT_FALSE(has_errors(validate_sheet(second, core)));
}

TEST(Annotation, PreresolvedCandidatesResolveParents) {
  auto core = seed_core();
  auto o = load("ontologies/facility_malga.ttl", "http://example.org/malga");
  AnnotateOptions opts;
  opts.preresolved["http://example.org/malga#Facility"] = Gid(4);
  AnnotationSession s(o, core, opts);
  EXPECT_EQ(s.total(), 1u);
  EXPECT_EQ(s.current().label, "Malga");
  EXPECT_EQ(s.current_parent_gid(), Gid(4));
}

TEST(Annotation, RandomSheetsKeepPlaceholderDiscipline) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto fails = testing_support::check_placeholder_discipline(seed);
    for (const auto& f : fails) ADD_FAILURE() << f;
  }
}

TEST(Annotation, RandomPairsAreReuseReady) {
  testing_support::Rng rng(99);
  for (int round = 0; round < 50; ++round) {
    auto pair = testing_support::random_ontology_core_pair(rng);
    auto first = annotate(pair.ontology, pair.core, accept_first(), rooted());
    for (auto& r : first.records)
      if (r.is_new())
        r.gloss = "a " + (r.parent_label.empty() ? std::string("entity") : r.parent_label) +
                  " distinguished by trait " + std::to_string(round);
    auto core = pair.core;
    auto mapping = import_sheet(first, core);
    auto second = annotate(pair.ontology, core, accept_first(), rooted());
    EXPECT_EQ(second.new_concept_count(), 0u);
    for (std::size_t i = 0; i < first.records.size(); ++i) {
      Gid g = first.records[i].gid();
      if (g.placeholder()) g = mapping.at(g);
      EXPECT_EQ(second.records[i].gid(), g);
    }
  }
}
