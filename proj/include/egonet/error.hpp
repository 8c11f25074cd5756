#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egonet {

enum class ErrorCode {
  SelfLoop,
  EmptyLabelSet,
  DuplicateRespondentId,
  UnknownSource,
  LabelConflict,
  EmptyResult,
  TooFewNodes,
  NoEdges,
  DegenerateAttribute,
  UnknownEgo,
  NotAnEgo,
  SamePair,
  IsolatedEgo,
  TooFewEgos,
  EgoSetMismatch,
  MissingFile,
  SchemaMismatch,
  EmptyInput,
  AliasCycle,
  ConventionMismatch,
  UnsupportedFormat,
  InvalidConfig,
  InvalidNetwork,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::DuplicateRespondentId: return "DuplicateRespondentId";
    case ErrorCode::UnknownSource: return "UnknownSource";
    case ErrorCode::LabelConflict: return "LabelConflict";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::DegenerateAttribute: return "DegenerateAttribute";
    case ErrorCode::UnknownEgo: return "UnknownEgo";
    case ErrorCode::NotAnEgo: return "NotAnEgo";
    case ErrorCode::SamePair: return "SamePair";
    case ErrorCode::IsolatedEgo: return "IsolatedEgo";
    case ErrorCode::TooFewEgos: return "TooFewEgos";
    case ErrorCode::EgoSetMismatch: return "EgoSetMismatch";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::AliasCycle: return "AliasCycle";
    case ErrorCode::ConventionMismatch: return "ConventionMismatch";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
  }
  return "Unknown";
}

// Process exit status used by the command-line tool. 0 is success, 1 is
// reserved for usage errors, everything else maps one-to-one onto ErrorCode.
inline int exit_code(ErrorCode code) { return 10 + static_cast<int>(code); }

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace egonet
