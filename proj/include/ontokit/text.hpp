#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/error.hpp"

namespace ontokit {

// Unicode case folding (ICU full folding) of a UTF-8 string.
std::string fold_case(std::string_view utf8);

// Collapses runs of ASCII whitespace to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// The lemma key used for synonym search: case folded, whitespace normalized.
std::string normalize_lemma(std::string_view text);

std::string_view trim(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

// Case-folded word tokens. A token is a maximal run of letters and digits
// (any non-ASCII code point counts as a letter); inner hyphens are kept.
std::vector<std::string> tokenize(std::string_view text);

using WordSet = std::set<std::string, std::less<>>;

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(WordSet words) : words_(std::move(words)) {}

  // The shipped list (data/stopwords_en.txt).
  static const StopwordList& english();
  // One word per line, '#' comments.
  static StopwordList parse(std::string_view text);

  bool contains(std::string_view folded_word) const;
  const WordSet& words() const noexcept { return words_; }

 private:
  WordSet words_;
};

// Double-quoted string with \" \\ \n \t \r escapes.
std::string quote(std::string_view text);

// One field of a line-oriented record: a bare word or a quoted string.
struct Field {
  std::string text;
  bool quoted = false;
  std::size_t column = 0;
};

// Splits a record line into whitespace-separated fields. Malformed quoting is
// reported as `code` with the given line number.
std::vector<Field> split_fields(std::string_view line, std::size_t line_no,
                                ErrorCode code);

}  // namespace ontokit
