#include "ontokit/decision_script.hpp"

#include <charconv>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

std::string format_decision(const Decision& d) {
  switch (d.type) {
    case Decision::Type::Accept:
      return "accept " + to_string(d.gid) + (d.override_hits ? " override" : "");
    case Decision::Type::NewConcept: return "new " + normalize_whitespace(d.gloss);
    case Decision::Type::Skip: return "skip";
  }
  return "skip";
}

std::optional<Decision> parse_decision(std::string_view text) {
  text = trim(text);
  auto space = text.find(' ');
  std::string_view verb = text.substr(0, space);
  std::string_view rest = space == std::string_view::npos ? "" : trim(text.substr(space));
  if (verb == "skip" && rest.empty()) return Decision::skip();
  if (verb == "new") return Decision::new_concept(std::string(rest));
  if (verb == "accept") {
    auto parts = split(rest, ' ');
    if (parts.empty() || parts.size() > 2) return std::nullopt;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), v);
    if (ec != std::errc() || ptr != parts[0].data() + parts[0].size() || v <= 0)
      return std::nullopt;
    if (parts.size() == 2 && parts[1] != "override") return std::nullopt;
    return Decision::accept(Gid(v), parts.size() == 2);
  }
  return std::nullopt;
}

DecisionScript DecisionScript::parse(std::string_view text) {
  DecisionScript script;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    auto colon = line.find(':');
    if (eq == std::string_view::npos || colon == std::string_view::npos || colon > eq)
      throw Error(ErrorCode::ParseError, "expected '<kind>:<label> = <decision>'", line_no, 1);
    auto kind = parse_hierarchy_kind(trim(line.substr(0, colon)));
    if (!kind)
      throw Error(ErrorCode::ParseError,
                  "unknown hierarchy kind '" + std::string(trim(line.substr(0, colon))) + "'",
                  line_no, 1);
    auto label = trim(line.substr(colon + 1, eq - colon - 1));
    if (label.empty()) throw Error(ErrorCode::ParseError, "empty label", line_no, colon + 2);
    auto decision = parse_decision(line.substr(eq + 1));
    if (!decision)
      throw Error(ErrorCode::ParseError, "malformed decision '" +
                                             std::string(trim(line.substr(eq + 1))) + "'",
                  line_no, eq + 2);
    if (script.find(*kind, label))
      throw Error(ErrorCode::ParseError, "duplicate decision for '" + std::string(label) + "'",
                  line_no, colon + 2);
    script.set(*kind, label, std::move(*decision));
  }
  return script;
}

std::string DecisionScript::format() const {
  std::ostringstream out;
  for (const auto& [key, entry] : entries_)
    out << to_string(key.first) << ':' << entry.label << " = " << format_decision(entry.decision)
        << '\n';
  return out.str();
}

void DecisionScript::set(HierarchyKind kind, std::string_view label, Decision decision) {
  entries_.insert_or_assign(Key{kind, normalize_lemma(label)},
                            Entry{normalize_whitespace(label), std::move(decision)});
}

const Decision* DecisionScript::find(HierarchyKind kind, std::string_view label) const {
  auto it = entries_.find(Key{kind, normalize_lemma(label)});
  return it == entries_.end() ? nullptr : &it->second.decision;
}

}  // namespace ontokit
