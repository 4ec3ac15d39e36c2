#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ontokit::ft {

// Top-level distinctions. Object, Function and Action specialize Anything;
// Producer and Consumer specialize Function. Nothing else subsumes.
enum class Distinction { Anything, Object, Function, Action, Producer, Consumer };

inline constexpr std::array<Distinction, 6> kAllDistinctions = {
    Distinction::Anything, Distinction::Object,   Distinction::Function,
    Distinction::Action,   Distinction::Producer, Distinction::Consumer};

std::string_view to_string(Distinction d);
std::optional<Distinction> parse_distinction(std::string_view name);

// Direct parent in the lattice; none for Anything.
constexpr std::optional<Distinction> parent_of(Distinction d) {
  switch (d) {
    case Distinction::Anything: return std::nullopt;
    case Distinction::Object:
    case Distinction::Function:
    case Distinction::Action: return Distinction::Anything;
    case Distinction::Producer:
    case Distinction::Consumer: return Distinction::Function;
  }
  return std::nullopt;
}

// Reflexive-transitive closure of parent_of.
constexpr bool subsumes(Distinction upper, Distinction lower) {
  for (std::optional<Distinction> cur = lower; cur; cur = parent_of(*cur))
    if (*cur == upper) return true;
  return false;
}

enum class RelationKind { ObjectToObjectRelation, ObjectFunction, FunctionAction, ObjectAction };

inline constexpr std::array<RelationKind, 4> kAllRelationKinds = {
    RelationKind::ObjectToObjectRelation, RelationKind::ObjectFunction,
    RelationKind::FunctionAction, RelationKind::ObjectAction};

struct Signature {
  Distinction domain;
  Distinction range;
};

constexpr Signature signature(RelationKind kind) {
  switch (kind) {
    case RelationKind::ObjectToObjectRelation: return {Distinction::Object, Distinction::Object};
    case RelationKind::ObjectFunction: return {Distinction::Object, Distinction::Function};
    case RelationKind::FunctionAction: return {Distinction::Function, Distinction::Action};
    case RelationKind::ObjectAction: return {Distinction::Object, Distinction::Action};
  }
  return {Distinction::Anything, Distinction::Anything};
}

std::string_view to_string(RelationKind kind);
std::optional<RelationKind> parse_relation_kind(std::string_view name);

// The foundational relation whose signature covers (domain, range) under
// subsumption of both ends, if any. Signatures are pairwise disjoint, so the
// answer is unique.
constexpr std::optional<RelationKind> relation_kind_for(Distinction domain, Distinction range) {
  for (auto kind : kAllRelationKinds) {
    auto sig = signature(kind);
    if (subsumes(sig.domain, domain) && subsumes(sig.range, range)) return kind;
  }
  return std::nullopt;
}

using Date = std::chrono::year_month_day;

// Accepts ISO "2020-01-01" and day-first "01.01.2020".
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);

// The domain reference context a model is built against.
struct ThingContext {
  std::string domain;
  std::string spatial_scope;
  std::optional<Date> start;
  std::optional<Date> end;

  // Throws Error(InvalidContext) when start > end.
  void validate() const;
  friend bool operator==(const ThingContext&, const ThingContext&) = default;
};

// Human-readable dump of the distinctions, relations and context.
std::string dump_lattice();

}  // namespace ontokit::ft
