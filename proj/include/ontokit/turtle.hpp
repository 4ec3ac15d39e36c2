#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontokit::rdf {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

std::string rdf(std::string_view local);
std::string rdfs(std::string_view local);
std::string owl(std::string_view local);
std::string xsd(std::string_view local);

struct Term {
  enum class Kind { Iri, Blank, Literal };

  Kind kind = Kind::Iri;
  std::string value;     // IRI, blank node label, or lexical form
  std::string language;  // literals only, lower-cased
  std::string datatype;  // literals only; empty for simple literals

  static Term iri(std::string value) { return {Kind::Iri, std::move(value), {}, {}}; }
  static Term blank(std::string label) { return {Kind::Blank, std::move(label), {}, {}}; }
  static Term literal(std::string lexical, std::string language = {},
                      std::string datatype = {}) {
    return {Kind::Literal, std::move(lexical), std::move(language), std::move(datatype)};
  }

  bool is_iri() const noexcept { return kind == Kind::Iri; }
  bool is_blank() const noexcept { return kind == Kind::Blank; }
  bool is_literal() const noexcept { return kind == Kind::Literal; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using PrefixMap = std::vector<std::pair<std::string, std::string>>;

struct Document {
  std::string base;
  PrefixMap prefixes;  // declaration order
  std::vector<Triple> triples;
};

// Parses the supported Turtle subset: @prefix/@base and SPARQL-style
// PREFIX/BASE, IRIs, prefixed names, blank node labels and [ ... ] property
// lists, string literals (short and long, with language tags or datatypes),
// integer/decimal/double/boolean shorthands, `a`, and ';' / ',' lists.
// Collections are rejected. Throws Error(ParseError) with line and column.
Document parse_turtle(std::string_view text, std::string_view base_iri = {});

// Groups triples by subject in first-appearance order. IRIs are abbreviated
// with `prefixes` where the local part is a plain name.
std::string serialize_turtle(const std::vector<Triple>& triples,
                             const PrefixMap& prefixes);
std::string serialize_turtle(const Document& doc);

std::set<Triple> triple_set(const Document& doc);

// Joins a possibly relative IRI reference against a base.
std::string resolve_iri(std::string_view base, std::string_view reference);

// Local name of an IRI: text after the last '#', '/' or ':'.
std::string local_name(std::string_view iri);

}  // namespace ontokit::rdf
