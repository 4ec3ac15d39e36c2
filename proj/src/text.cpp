#include "ontokit/text.hpp"

#include <unicode/unistr.h>

#include <algorithm>

namespace ontokit {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::string fold_case(std::string_view utf8) {
  bool ascii = std::all_of(utf8.begin(), utf8.end(),
                           [](char c) { return static_cast<unsigned char>(c) < 0x80; });
  if (ascii) {
    std::string out(utf8);
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  }
  auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u.foldCase();
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string normalize_lemma(std::string_view text) {
  return normalize_whitespace(fold_case(text));
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> tokenize(std::string_view text) {
  std::string folded = fold_case(text);
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < folded.size(); ++i) {
    auto c = static_cast<unsigned char>(folded[i]);
    if (is_word_byte(c)) {
      current.push_back(folded[i]);
    } else if (c == '-' && !current.empty() && i + 1 < folded.size() &&
               is_word_byte(static_cast<unsigned char>(folded[i + 1]))) {
      current.push_back('-');
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

const StopwordList& StopwordList::english() {
  static const StopwordList list = parse(
#include "stopwords_en.inc"
  );
  return list;
}

StopwordList StopwordList::parse(std::string_view text) {
  WordSet words;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    words.insert(fold_case(line));
  }
  return StopwordList(std::move(words));
}

bool StopwordList::contains(std::string_view folded_word) const {
  return words_.find(folded_word) != words_.end();
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::vector<Field> split_fields(std::string_view line, std::size_t line_no,
                                ErrorCode code) {
  std::vector<Field> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    Field field;
    field.column = i + 1;
    if (line[i] == '"') {
      field.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c != '\\') {
          field.text.push_back(c);
          continue;
        }
        if (i >= line.size()) break;
        char e = line[i++];
        switch (e) {
          case 'n': field.text.push_back('\n'); break;
          case 't': field.text.push_back('\t'); break;
          case 'r': field.text.push_back('\r'); break;
          case '"': field.text.push_back('"'); break;
          case '\\': field.text.push_back('\\'); break;
          default:
            throw Error(code, std::string("unknown escape \\") + e, line_no, i - 1);
        }
      }
      if (!closed) throw Error(code, "unterminated string", line_no, field.column);
      if (i < line.size() && !is_space(line[i]))
        throw Error(code, "expected whitespace after string", line_no, i + 1);
    } else {
      while (i < line.size() && !is_space(line[i])) field.text.push_back(line[i++]);
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

}  // namespace ontokit
