#include "ontokit/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "ontokit/error.hpp"

namespace ontokit::rdf {

std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
std::string owl(std::string_view local) { return std::string(kOwl) + std::string(local); }
std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }

namespace {

bool has_scheme(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    char c = iri[i];
    bool ok = std::isalpha(static_cast<unsigned char>(c)) ||
              (i > 0 && (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
                         c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-';
}

constexpr char kAnonMarker = '\x01';

class Parser {
 public:
  Parser(std::string_view text, std::string_view base) : text_(text), base_(base) {}

  Document run() {
    doc_.base = base_;
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    relabel_anonymous();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what, line_, col_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  bool keyword_ahead(std::string_view kw, bool case_insensitive) const {
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i], b = kw[i];
      if (case_insensitive) {
        a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
        b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
      }
      if (a != b) return false;
    }
    char after = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : ' ';
    return !is_name_char(static_cast<unsigned char>(after)) && after != ':';
  }

  void statement() {
    if (peek() == '@') {
      get();
      if (keyword_ahead("prefix", false)) {
        advance(6);
        prefix_decl();
      } else if (keyword_ahead("base", false)) {
        advance(4);
        base_decl();
      } else {
        fail("unknown directive");
      }
      skip_ws();
      expect('.');
      return;
    }
    if (keyword_ahead("PREFIX", true)) {
      advance(6);
      prefix_decl();
      return;
    }
    if (keyword_ahead("BASE", true)) {
      advance(4);
      base_decl();
      return;
    }
    triples();
    skip_ws();
    expect('.');
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) get();
  }

  void prefix_decl() {
    skip_ws();
    std::string name;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek())) ) name.push_back(get());
    if (!name.empty() && name.back() == '.') fail("prefix name may not end with '.'");
    expect(':');
    skip_ws();
    std::string iri = iri_ref();
    auto it = std::find_if(doc_.prefixes.begin(), doc_.prefixes.end(),
                           [&](const auto& p) { return p.first == name; });
    if (it != doc_.prefixes.end())
      it->second = iri;
    else
      doc_.prefixes.emplace_back(name, iri);
  }

  void base_decl() {
    skip_ws();
    base_ = iri_ref();
    doc_.base = base_;
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected an IRI");
    get();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        value += unicode_escape();
        continue;
      }
      if (c == ' ' || c == '\n' || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`')
        fail("illegal character in IRI");
      value.push_back(c);
    }
    return resolve_iri(base_, value);
  }

  std::string unicode_escape() {
    char kind = at_end() ? '\0' : get();
    int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape");
    std::string hex;
    for (int i = 0; i < digits; ++i) {
      if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek())))
        fail("invalid unicode escape");
      hex.push_back(get());
    }
    std::uint32_t cp = 0;
    std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
    std::string out;
    append_utf8(out, static_cast<char32_t>(cp));
    return out;
  }

  Term prefixed_name() {
    auto start_line = line_, start_col = col_;
    std::string prefix;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) prefix.push_back(get());
    if (peek() != ':') fail("expected a prefixed name");
    get();
    std::string local;
    while (!at_end()) {
      unsigned char c = static_cast<unsigned char>(peek());
      if (is_name_char(c) || c == ':' || std::isdigit(c)) {
        local.push_back(get());
      } else if (c == '.' && is_name_char(static_cast<unsigned char>(peek(1)))) {
        local.push_back(get());
      } else if (c == '%') {
        local.push_back(get());
        for (int i = 0; i < 2; ++i) {
          if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("bad percent escape");
          local.push_back(get());
        }
      } else if (c == '\\') {
        get();
        if (at_end()) fail("bad local name escape");
        local.push_back(get());
      } else {
        break;
      }
    }
    auto it = std::find_if(doc_.prefixes.begin(), doc_.prefixes.end(),
                           [&](const auto& p) { return p.first == prefix; });
    if (it == doc_.prefixes.end())
      throw Error(ErrorCode::ParseError, "undeclared prefix '" + prefix + ":'", start_line, start_col);
    return Term::iri(it->second + local);
  }

  Term blank_label() {
    get();  // '_'
    expect(':');
    std::string label;
    while (!at_end()) {
      unsigned char c = static_cast<unsigned char>(peek());
      if (is_name_char(c) || std::isdigit(c)) {
        label.push_back(get());
      } else if (c == '.' && is_name_char(static_cast<unsigned char>(peek(1)))) {
        label.push_back(get());
      } else {
        break;
      }
    }
    if (label.empty()) fail("empty blank node label");
    explicit_blanks_.insert(label);
    return Term::blank(label);
  }

  Term fresh_blank() {
    return Term::blank(std::string(1, kAnonMarker) + std::to_string(anon_count_++));
  }

  Term iri_term() {
    if (peek() == '<') return Term::iri(iri_ref());
    return prefixed_name();
  }

  Term subject() {
    char c = peek();
    if (c == '<') return iri_term();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_node_property_list();
    if (c == '(') fail("collections are not supported");
    if (c == '"' || c == '\'') fail("a literal cannot be a subject");
    return prefixed_name();
  }

  Term predicate() {
    if (peek() == 'a' && !is_name_char(static_cast<unsigned char>(peek(1))) &&
        peek(1) != ':') {
      get();
      return Term::iri(rdf("type"));
    }
    if (peek() == '_' ) fail("a blank node cannot be a predicate");
    return iri_term();
  }

  Term object() {
    char c = peek();
    if (c == '<') return iri_term();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_node_property_list();
    if (c == '(') fail("collections are not supported");
    if (c == '"' || c == '\'') return literal();
    if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
      return numeric();
    if (keyword_ahead("true", false) || keyword_ahead("false", false)) {
      std::string v = peek() == 't' ? "true" : "false";
      advance(v.size());
      return Term::literal(v, {}, xsd("boolean"));
    }
    return prefixed_name();
  }

  Term numeric() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex.push_back(get());
    bool digits = false, dot = false, exp = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        lex.push_back(get());
      } else if (c == '.' && !dot && !exp &&
                 std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        lex.push_back(get());
      } else if ((c == 'e' || c == 'E') && digits && !exp) {
        exp = true;
        lex.push_back(get());
        if (peek() == '+' || peek() == '-') lex.push_back(get());
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      } else {
        break;
      }
    }
    if (!digits) fail("malformed number");
    return Term::literal(lex, {}, xsd(exp ? "double" : dot ? "decimal" : "integer"));
  }

  Term literal() {
    char q = get();
    bool long_form = peek() == q && peek(1) == q;
    if (long_form) {
      get();
      get();
    } else if (peek() == q) {
      get();  // empty short literal
      return literal_suffix({});
    }
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      char c = peek();
      if (long_form && c == q && peek(1) == q && peek(2) == q) {
        advance(3);
        break;
      }
      if (!long_form && c == q) {
        get();
        break;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in short string literal");
      get();
      if (c != '\\') {
        value.push_back(c);
        continue;
      }
      if (at_end()) fail("unterminated escape");
      char e = peek();
      switch (e) {
        case 't': value.push_back('\t'); get(); break;
        case 'b': value.push_back('\b'); get(); break;
        case 'n': value.push_back('\n'); get(); break;
        case 'r': value.push_back('\r'); get(); break;
        case 'f': value.push_back('\f'); get(); break;
        case '"': value.push_back('"'); get(); break;
        case '\'': value.push_back('\''); get(); break;
        case '\\': value.push_back('\\'); get(); break;
        case 'u':
        case 'U': value += unicode_escape(); break;
        default: fail(std::string("invalid string escape \\") + e);
      }
    }
    return literal_suffix(std::move(value));
  }

  Term literal_suffix(std::string value) {
    if (peek() == '@') {
      get();
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        lang.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(get()))));
      if (lang.empty()) fail("empty language tag");
      return Term::literal(std::move(value), std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance(2);
      Term dt = iri_term();
      return Term::literal(std::move(value), {}, dt.value);
    }
    return Term::literal(std::move(value));
  }

  Term blank_node_property_list() {
    expect('[');
    Term node = fresh_blank();
    skip_ws();
    if (peek() != ']') predicate_object_list(node);
    skip_ws();
    expect(']');
    return node;
  }

  void triples() {
    bool bracket_subject = peek() == '[';
    Term s = subject();
    skip_ws();
    if (bracket_subject && peek() == '.') return;
    predicate_object_list(s);
  }

  void predicate_object_list(const Term& s) {
    while (true) {
      skip_ws();
      Term p = predicate();
      while (true) {
        skip_ws();
        Term o = object();
        doc_.triples.push_back({s, p, std::move(o)});
        skip_ws();
        if (peek() != ',') break;
        get();
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']') return;
    }
  }

  void relabel_anonymous() {
    if (anon_count_ == 0) return;
    std::map<std::string, std::string> names;
    std::size_t next = 0;
    auto fresh = [&] {
      while (true) {
        std::string candidate = "b" + std::to_string(next++);
        if (!explicit_blanks_.count(candidate)) return candidate;
      }
    };
    auto fix = [&](Term& t) {
      if (!t.is_blank() || t.value.empty() || t.value[0] != kAnonMarker) return;
      auto [it, inserted] = names.try_emplace(t.value);
      if (inserted) it->second = fresh();
      t.value = it->second;
    };
    for (auto& t : doc_.triples) {
      fix(t.subject);
      fix(t.object);
    }
  }

  std::string_view text_;
  std::string base_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::size_t anon_count_ = 0;
  std::set<std::string> explicit_blanks_;
  Document doc_;
};

bool plain_local(std::string_view local) {
  if (local.empty()) return true;
  if (!is_name_start(static_cast<unsigned char>(local.front())) &&
      !std::isdigit(static_cast<unsigned char>(local.front())))
    return false;
  return std::all_of(local.begin(), local.end(),
                     [](char c) { return is_name_char(static_cast<unsigned char>(c)); });
}

std::string escape_literal(std::string_view v) {
  std::string out;
  for (char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_iri(std::string_view v) {
  std::string out;
  for (char c : v) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      char buf[11];
      std::snprintf(buf, sizeof buf, "\\u%04X", u);
      out += buf;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

class Writer {
 public:
  explicit Writer(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string iri(std::string_view value) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& p : prefixes_) {
      if (p.second.empty() || value.substr(0, p.second.size()) != p.second) continue;
      if (!plain_local(value.substr(p.second.size()))) continue;
      if (!best || p.second.size() > best->second.size()) best = &p;
    }
    if (best) return best->first + ":" + std::string(value.substr(best->second.size()));
    return "<" + escape_iri(value) + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Iri: return iri(t.value);
      case Term::Kind::Blank: return "_:" + t.value;
      case Term::Kind::Literal: {
        std::string out = "\"" + escape_literal(t.value) + "\"";
        if (!t.language.empty()) out += "@" + t.language;
        else if (!t.datatype.empty()) out += "^^" + iri(t.datatype);
        return out;
      }
    }
    return {};
  }

  std::string predicate(const Term& t) const {
    return t.value == rdf("type") ? "a" : term(t);
  }

 private:
  const PrefixMap& prefixes_;
};

}  // namespace

static std::string join_iri(std::string_view base, std::string_view reference);

namespace {

// Drops "." and ".." segments from the path part of an absolute IRI.
std::string remove_dot_segments(const std::string& iri) {
  auto scheme_end = iri.find("://");
  if (scheme_end == std::string::npos) return iri;
  auto path_start = iri.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return iri;
  auto path_end = iri.find_first_of("?#", path_start);
  if (path_end == std::string::npos) path_end = iri.size();
  std::string path = iri.substr(path_start, path_end - path_start);
  if (path.find("/.") == std::string::npos) return iri;

  std::vector<std::string> segs;
  std::size_t i = 1;
  bool trailing = false;
  while (i <= path.size()) {
    auto next = path.find('/', i);
    if (next == std::string::npos) next = path.size();
    std::string seg = path.substr(i, next - i);
    bool last = next == path.size();
    if (seg == ".") {
      trailing = last;
    } else if (seg == "..") {
      if (!segs.empty()) segs.pop_back();
      trailing = last;
    } else {
      segs.push_back(seg);
      trailing = false;
    }
    i = next + 1;
  }
  std::string out;
  for (const auto& seg : segs) out += "/" + seg;
  if (trailing || out.empty()) out += "/";
  return iri.substr(0, path_start) + out + iri.substr(path_end);
}

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view reference) {
  auto joined = join_iri(base, reference);
  return has_scheme(reference) ? joined : remove_dot_segments(joined);
}

static std::string join_iri(std::string_view base, std::string_view reference) {
  if (has_scheme(reference) || base.empty()) return std::string(reference);
  std::string b(base);
  if (reference.empty()) {
    auto hash = b.find('#');
    return hash == std::string::npos ? b : b.substr(0, hash);
  }
  if (reference.front() == '#') {
    auto hash = b.find('#');
    return (hash == std::string::npos ? b : b.substr(0, hash)) + std::string(reference);
  }
  auto scheme_end = b.find("://");
  std::size_t authority_end =
      scheme_end == std::string::npos ? std::string::npos : b.find('/', scheme_end + 3);
  if (reference.front() == '/') {
    if (authority_end == std::string::npos) return b + std::string(reference);
    return b.substr(0, authority_end) + std::string(reference);
  }
  auto cut = b.find_first_of("?#");
  if (cut != std::string::npos) b.resize(cut);
  auto slash = b.rfind('/');
  if (slash == std::string::npos || (authority_end == std::string::npos && scheme_end != std::string::npos))
    return b + "/" + std::string(reference);
  return b.substr(0, slash + 1) + std::string(reference);
}

std::string local_name(std::string_view iri) {
  auto pos = iri.find_last_of("#/:");
  if (pos == std::string_view::npos) return std::string(iri);
  if (pos + 1 == iri.size()) {
    // trailing separator: use the segment before it
    auto prev = iri.substr(0, pos).find_last_of("#/:");
    return std::string(iri.substr(prev == std::string_view::npos ? 0 : prev + 1,
                                  pos - (prev == std::string_view::npos ? 0 : prev + 1)));
  }
  return std::string(iri.substr(pos + 1));
}

Document parse_turtle(std::string_view text, std::string_view base_iri) {
  return Parser(text, base_iri).run();
}

std::string serialize_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& [name, iri] : prefixes) out << "@prefix " << name << ": <" << escape_iri(iri) << "> .\n";
  if (!prefixes.empty() && !triples.empty()) out << '\n';

  Writer w(prefixes);
  std::vector<Term> order;
  std::map<Term, std::vector<const Triple*>> by_subject;
  for (const auto& t : triples) {
    auto [it, inserted] = by_subject.try_emplace(t.subject);
    if (inserted) order.push_back(t.subject);
    it->second.push_back(&t);
  }
  for (const auto& s : order) {
    const auto& group = by_subject[s];
    out << w.term(s);
    for (std::size_t i = 0; i < group.size(); ++i) {
      const Triple& t = *group[i];
      bool same_pred = i > 0 && group[i - 1]->predicate == t.predicate;
      if (i == 0) {
        out << ' ' << w.predicate(t.predicate) << ' ';
      } else if (same_pred) {
        out << ",\n    ";
      } else {
        out << " ;\n  " << w.predicate(t.predicate) << ' ';
      }
      out << w.term(t.object);
    }
    out << " .\n";
  }
  return out.str();
}

std::string serialize_turtle(const Document& doc) {
  return serialize_turtle(doc.triples, doc.prefixes);
}

std::set<Triple> triple_set(const Document& doc) {
  return {doc.triples.begin(), doc.triples.end()};
}

}  // namespace ontokit::rdf
