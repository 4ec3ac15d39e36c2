#include "ontokit/text.hpp"

#include "support.hpp"

using namespace ontokit;

TEST(Text, FoldCaseHandlesAsciiAndUnicode) {
  EXPECT_EQ(fold_case("Trento"), "trento");
  EXPECT_EQ(fold_case("CITTÀ"), "città");
  EXPECT_EQ(fold_case("Straße"), "strasse");  // full folding
}

TEST(Text, NormalizeLemmaCollapsesWhitespace) {
  EXPECT_EQ(normalize_lemma("  Mountain \t  Hut "), "mountain hut");
  EXPECT_EQ(normalize_lemma(""), "");
}

TEST(Text, TokenizeKeepsInnerHyphensAndDropsPunctuation) {
  EXPECT_EQ(tokenize("Which malga near Trento offers accommodation?"),
            (std::vector<std::string>{"which", "malga", "near", "trento", "offers",
                                      "accommodation"}));
  EXPECT_EQ(tokenize("bed-and-breakfast, -x- 2020"),
            (std::vector<std::string>{"bed-and-breakfast", "x", "2020"}));
  EXPECT_EQ(tokenize("Città di Trento"), (std::vector<std::string>{"città", "di", "trento"}));
}

TEST(Text, ShippedStopwordsCoverFunctionWordsOnly) {
  const auto& stop = StopwordList::english();
  for (const char* w : {"which", "near", "a", "the", "of", "where", "can"})
    EXPECT_TRUE(stop.contains(w)) << w;
  for (const char* w : {"malga", "trento", "offers", "accommodation", "book"})
    EXPECT_FALSE(stop.contains(w)) << w;
}

TEST(Text, StopwordParseSkipsCommentsAndFolds) {
  auto list = StopwordList::parse("# header\nThe\n\n  of \n");
  EXPECT_EQ(list.words(), (WordSet{"of", "the"}));
}

TEST(Text, QuoteAndSplitFieldsRoundTrip) {
  std::string weird = "say \"hi\"\tback\\slash\nnext";
  std::string line = "rec 12 " + quote(weird) + " bare";
  auto f = split_fields(line, 3, ErrorCode::ParseError);
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0].text, "rec");
  EXPECT_FALSE(f[1].quoted);
  EXPECT_TRUE(f[2].quoted);
  EXPECT_EQ(f[2].text, weird);
  EXPECT_EQ(f[3].text, "bare");
}

TEST(Text, SplitFieldsReportsUnterminatedQuote) {
  try {
    split_fields("rec \"open", 7, ErrorCode::CorruptSnapshot);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptSnapshot);
    EXPECT_EQ(e.line(), 7u);
  }
}
