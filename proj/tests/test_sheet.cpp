#include "ontokit/sheet_csv.hpp"

#include "ontokit/decision_script.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace ontokit;
using testing_support::fixture_text;

namespace {

Error sheet_error(const std::string& body) {
  try {
    parse_sheet("# ontokit-sheet 1\n" + std::string(kSheetHeader) + "\n" + body);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << body;
  return Error(ErrorCode::Usage, "none");
}

// Free text with the characters CSV has to quote.
std::string random_text(testing_support::Rng& rng) {
  static const std::vector<std::string> atoms = {"a", "malga", " ", ",", "\"", "\n", "é",
                                                 "città", "x y", "\r\n", "#", "''"};
  std::string out;
  std::size_t n = testing_support::pick(rng, 6);
  for (std::size_t i = 0; i < n; ++i) out += atoms[testing_support::pick(rng, atoms.size())];
  return out;
}

AnnotationSheet random_sheet(testing_support::Rng& rng) {
  AnnotationSheet s;
  s.source_iri = "http://example.org/" + std::to_string(rng() % 100);
  s.metadata.annotator = "expert " + std::to_string(rng() % 10);
  s.metadata.core_revision = rng() % 1000;
  if (testing_support::coin(rng)) s.metadata.skipped.push_back("class:Skipped one");
  std::int64_t next = -1;
  std::size_t n = testing_support::pick(rng, 8);
  for (std::size_t i = 0; i < n; ++i) {
    AnnotationRecord r;
    r.label = random_text(rng);
    r.language = testing_support::coin(rng) ? "en" : "it";
    r.kind = kAllHierarchyKinds[testing_support::pick(rng, 3)];
    if (testing_support::coin(rng)) {
      r.outcome = NoSynonymousMatch{Gid(next--)};
      r.gloss = random_text(rng) + "g";
    } else {
      r.outcome = SynonymousMatch{Gid(1 + std::int64_t(rng() % 50)), 1 + int(rng() % 4)};
    }
    r.parent_label = random_text(rng);
    r.parent_gid = Gid(std::int64_t(rng() % 7) - 3);
    r.source_iri = "http://example.org/x#" + std::to_string(i);
    s.records.push_back(std::move(r));
  }
  return s;
}

}  // namespace

TEST(Sheet, FixtureSheetsRoundTrip) {
  for (const char* rel : {"sheets/valid_five.csv", "sheets/gap_placeholders.csv"}) {
    auto text = fixture_text(rel);
    auto sheet = parse_sheet(text);
    EXPECT_EQ(export_sheet(sheet), text) << rel;
    EXPECT_EQ(parse_sheet(export_sheet(sheet)), sheet);
  }
}

TEST(Sheet, EmptySheetRoundTrips) {
  AnnotationSheet empty;
  auto text = export_sheet(empty);
  EXPECT_NE(text.find(kSheetHeader), std::string::npos);
  EXPECT_EQ(parse_sheet(text), empty);
}

TEST(Sheet, RandomSheetsRoundTrip) {
  testing_support::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    auto sheet = random_sheet(rng);
    EXPECT_EQ(parse_sheet(export_sheet(sheet)), sheet);
  }
}

TEST(Sheet, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field(" padded"), "\" padded\"");
}

TEST(Sheet, MalformedRowsCarryPositions) {
  auto short_row = sheet_error("Malga,en,-1\n");
  EXPECT_EQ(short_row.code(), ErrorCode::MalformedRow);
  EXPECT_EQ(short_row.line(), 3u);

  auto bad_gid = sheet_error("x,en,4,1,,,,class,\nMalga,en,abc,,,,g,class,\n");
  EXPECT_EQ(bad_gid.line(), 4u);
  EXPECT_EQ(bad_gid.column(), 10u);

  auto zero = sheet_error("Malga,en,0,,,,g,class,\n");
  EXPECT_EQ(zero.line(), 3u);

  auto kind = sheet_error("Malga,en,-1,,,,g,concept,\n");
  EXPECT_EQ(kind.column(), 18u);

  auto quote = sheet_error("\"open,en,-1,,,,g,class,\n");
  EXPECT_EQ(quote.line(), 3u);
  EXPECT_EQ(quote.column(), 1u);

  EXPECT_EQ(sheet_error("M,en,-1,2,,,g,class,\n").code(), ErrorCode::MalformedRow);
  EXPECT_ONTOKIT_ERROR(parse_sheet("label,language\n"), ErrorCode::MalformedRow);
  EXPECT_ONTOKIT_ERROR(parse_sheet("# mystery: 1\n" + std::string(kSheetHeader) + "\n"),
                       ErrorCode::MalformedRow);
}

TEST(DecisionScript, ParseAndFormat) {
  auto script = DecisionScript::parse(
      "# comment\n"
      "class:Person = accept 5\n"
      "class:  Ski   RESORT = new a ski resort is a facility with lifts\n"
      "object-property:hasPart = skip\n"
      "class:Sauna = accept 12 override\n");
  EXPECT_EQ(script.size(), 4u);
  const Decision* d = script.find(HierarchyKind::Class, "ski resort");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->type, Decision::Type::NewConcept);
  EXPECT_EQ(d->gloss, "a ski resort is a facility with lifts");
  EXPECT_TRUE(script.find(HierarchyKind::Class, "Sauna")->override_hits);
  EXPECT_EQ(script.find(HierarchyKind::Class, "hasPart"), nullptr);
  EXPECT_EQ(DecisionScript::parse(script.format()).entries().size(), 4u);
}

TEST(DecisionScript, Errors) {
  EXPECT_ONTOKIT_ERROR(DecisionScript::parse("class:Person accept 5\n"), ErrorCode::ParseError);
  EXPECT_ONTOKIT_ERROR(DecisionScript::parse("thing:Person = accept 5\n"), ErrorCode::ParseError);
  EXPECT_ONTOKIT_ERROR(DecisionScript::parse("class:Person = accept five\n"), ErrorCode::ParseError);
  EXPECT_ONTOKIT_ERROR(DecisionScript::parse("class:Person = skip\nclass:person = skip\n"),
                       ErrorCode::ParseError);
  EXPECT_FALSE(parse_decision("maybe"));
  EXPECT_EQ(parse_decision("accept 3"), Decision::accept(Gid(3)));
}
