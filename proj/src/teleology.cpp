#include "ontokit/teleology.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "ontokit/error.hpp"

namespace ontokit::ft {

std::string_view to_string(Distinction d) {
  switch (d) {
    case Distinction::Anything: return "Anything";
    case Distinction::Object: return "Object";
    case Distinction::Function: return "Function";
    case Distinction::Action: return "Action";
    case Distinction::Producer: return "Producer";
    case Distinction::Consumer: return "Consumer";
  }
  return "Anything";
}

std::optional<Distinction> parse_distinction(std::string_view name) {
  for (auto d : kAllDistinctions)
    if (to_string(d) == name) return d;
  return std::nullopt;
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::ObjectToObjectRelation: return "ObjectToObjectRelation";
    case RelationKind::ObjectFunction: return "ObjectFunction";
    case RelationKind::FunctionAction: return "FunctionAction";
    case RelationKind::ObjectAction: return "ObjectAction";
  }
  return "ObjectToObjectRelation";
}

std::optional<RelationKind> parse_relation_kind(std::string_view name) {
  for (auto k : kAllRelationKinds)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

std::optional<int> number(std::string_view s) {
  int v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  std::optional<int> y, m, d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    y = number(text.substr(0, 4));
    m = number(text.substr(5, 2));
    d = number(text.substr(8, 2));
  } else if (text.size() == 10 && text[2] == '.' && text[5] == '.') {
    d = number(text.substr(0, 2));
    m = number(text.substr(3, 2));
    y = number(text.substr(6, 4));
  }
  if (!y || !m || !d) return std::nullopt;
  Date date{std::chrono::year(*y), std::chrono::month(static_cast<unsigned>(*m)),
            std::chrono::day(static_cast<unsigned>(*d))};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

void ThingContext::validate() const {
  if (start && end && *start > *end)
    throw Error(ErrorCode::InvalidContext, "context starts (" + format_date(*start) +
                                               ") after it ends (" + format_date(*end) + ")");
}

std::string dump_lattice() {
  std::ostringstream out;
  out << "foundational teleology\n";
  out << "distinctions:\n";
  auto print = [&](auto&& self, Distinction d, int depth) -> void {
    out << std::string(static_cast<std::size_t>(2 + 2 * depth), ' ') << to_string(d) << '\n';
    for (auto child : kAllDistinctions)
      if (parent_of(child) == d) self(self, child, depth + 1);
  };
  print(print, Distinction::Anything, 0);
  out << "relations:\n";
  for (auto k : kAllRelationKinds) {
    auto sig = signature(k);
    out << "  " << to_string(k) << " : " << to_string(sig.domain) << " -> "
        << to_string(sig.range) << '\n';
  }
  out << "context:\n";
  out << "  Thing : domain reference context (domain, spatial scope, temporal scope)\n";
  return out.str();
}

}  // namespace ontokit::ft
