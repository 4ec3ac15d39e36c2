#include "ontokit/error.hpp"

namespace ontokit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::UnknownGid: return "UnknownGID";
    case ErrorCode::UnknownLanguage: return "UnknownLanguage";
    case ErrorCode::EmptyGloss: return "EmptyGloss";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DuplicateLemma: return "DuplicateLemma";
    case ErrorCode::RankGap: return "RankGap";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::MissingDecision: return "MissingDecision";
    case ErrorCode::MissingGloss: return "MissingGloss";
    case ErrorCode::ForwardParentReference: return "ForwardParentReference";
    case ErrorCode::InvalidDecision: return "InvalidDecision";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyKernel: return "EmptyKernel";
    case ErrorCode::UnresolvedLabel: return "UnresolvedLabel";
    case ErrorCode::MissingKindDecision: return "MissingKindDecision";
    case ErrorCode::MalformedProperty: return "MalformedProperty";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::DanglingRelation: return "DanglingRelation";
    case ErrorCode::UngroundableRelation: return "UngroundableRelation";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

namespace {

std::string with_position(const std::string& message, std::size_t line,
                          std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}

std::string with_details(const std::string& message,
                         const std::vector<std::string>& details) {
  std::string out = message;
  for (const auto& d : details) out += "\n  " + d;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column)
    : std::runtime_error(with_position(message, line, column)),
      code_(code),
      line_(line),
      column_(column) {}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(with_details(message, details)),
      code_(code),
      details_(std::move(details)) {}

}  // namespace ontokit
