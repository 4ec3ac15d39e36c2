#include "ontokit/teleology.hpp"

#include "properties.hpp"
#include "support.hpp"

using namespace ontokit;
using namespace ontokit::ft;

TEST(Teleology, SubsumptionExamples) {
  EXPECT_TRUE(subsumes(Distinction::Anything, Distinction::Producer));
  EXPECT_TRUE(subsumes(Distinction::Function, Distinction::Consumer));
  EXPECT_FALSE(subsumes(Distinction::Object, Distinction::Function));
  EXPECT_FALSE(subsumes(Distinction::Producer, Distinction::Function));
  for (auto d : kAllDistinctions) EXPECT_TRUE(subsumes(d, d));
}

TEST(Teleology, RelationKindExamples) {
  EXPECT_EQ(relation_kind_for(Distinction::Object, Distinction::Producer),
            RelationKind::ObjectFunction);
  EXPECT_EQ(relation_kind_for(Distinction::Object, Distinction::Object),
            RelationKind::ObjectToObjectRelation);
  EXPECT_EQ(relation_kind_for(Distinction::Consumer, Distinction::Action),
            RelationKind::FunctionAction);
  EXPECT_EQ(relation_kind_for(Distinction::Action, Distinction::Function), std::nullopt);
  EXPECT_EQ(relation_kind_for(Distinction::Anything, Distinction::Object), std::nullopt);
}

TEST(Teleology, AllPairsAgreeWithSignatureEnumeration) {
  for (const auto& f : testing_support::check_ft_exhaustive()) ADD_FAILURE() << f;
}

TEST(Teleology, NamesRoundTrip) {
  for (auto d : kAllDistinctions) EXPECT_EQ(parse_distinction(to_string(d)), d);
  for (auto k : kAllRelationKinds) EXPECT_EQ(parse_relation_kind(to_string(k)), k);
  EXPECT_FALSE(parse_distinction("Thing"));
}

TEST(Teleology, Dates) {
  auto day_first = parse_date("01.01.2020");
  auto iso = parse_date("2020-01-01");
  ASSERT_TRUE(day_first && iso);
  EXPECT_EQ(*day_first, *iso);
  EXPECT_EQ(format_date(*iso), "2020-01-01");
  EXPECT_FALSE(parse_date("31.02.2020"));
  EXPECT_FALSE(parse_date("2020/01/01"));
  EXPECT_FALSE(parse_date(""));
}

TEST(Teleology, ContextValidation) {
  ThingContext ok{"tourist facilities", "Trentino", parse_date("2020-01-01"),
                  parse_date("2021-01-01")};
  EXPECT_NO_THROW(ok.validate());
  ThingContext open{"d", "s", parse_date("2020-01-01"), std::nullopt};
  EXPECT_NO_THROW(open.validate());
  ThingContext backwards{"d", "s", parse_date("2021-01-01"), parse_date("2020-01-01")};
  EXPECT_ONTOKIT_ERROR(backwards.validate(), ErrorCode::InvalidContext);
}

TEST(Teleology, LatticeDump) {
  EXPECT_EQ(dump_lattice(),
            "foundational teleology\n"
            "distinctions:\n"
            "  Anything\n"
            "    Object\n"
            "    Function\n"
            "      Producer\n"
            "      Consumer\n"
            "    Action\n"
            "relations:\n"
            "  ObjectToObjectRelation : Object -> Object\n"
            "  ObjectFunction : Object -> Function\n"
            "  FunctionAction : Function -> Action\n"
            "  ObjectAction : Object -> Action\n"
            "context:\n"
            "  Thing : domain reference context (domain, spatial scope, temporal scope)\n");
}
