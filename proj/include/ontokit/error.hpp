#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontokit {

enum class ErrorCode {
  // knowledge core
  UnknownParent,
  UnknownGid,
  UnknownLanguage,
  EmptyGloss,
  CycleDetected,
  DuplicateLemma,
  RankGap,
  CorruptSnapshot,
  // ontology ingest
  ParseError,
  CyclicHierarchy,
  // annotation
  MissingDecision,
  MissingGloss,
  ForwardParentReference,
  InvalidDecision,
  ValidationFailed,
  MalformedRow,
  // competency questions
  EmptyKernel,
  UnresolvedLabel,
  MissingKindDecision,
  MalformedProperty,
  // entity type graphs
  KindMismatch,
  DanglingRelation,
  UngroundableRelation,
  InvalidContext,
  // plumbing
  Io,
  Usage,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as Error. Parse-style errors carry a
// 1-based position (0 = unknown); aggregate errors carry one detail line per
// offending item.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t line,
        std::size_t column);
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
  std::vector<std::string> details_;
};

}  // namespace ontokit
