#include "plainloop/common/error.hpp"

namespace plainloop {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::NoReferences: return "NoReferences";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateRuleId: return "DuplicateRuleId";
    case ErrorCode::UnresolvedSymbol: return "UnresolvedSymbol";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::NoData: return "NoData";
    case ErrorCode::EmptyGold: return "EmptyGold";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingRationale: return "MissingRationale";
    case ErrorCode::UnknownDimension: return "UnknownDimension";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::NotInReview: return "NotInReview";
    case ErrorCode::NonCompliantChecklist: return "NonCompliantChecklist";
    case ErrorCode::InvalidDecision: return "InvalidDecision";
    case ErrorCode::RegenerationLimit: return "RegenerationLimit";
    case ErrorCode::UnknownItem: return "UnknownItem";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::DivergentState: return "DivergentState";
    case ErrorCode::LegalHold: return "LegalHold";
    case ErrorCode::RangeEmpty: return "RangeEmpty";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DuplicateItem: return "DuplicateItem";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(int line, int column, std::string token, const std::string& message)
    : Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message +
                                        (token.empty() ? std::string(" at end of input")
                                                       : " near '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

LogError::LogError(ErrorCode code, std::uint64_t seq, const std::string& message)
    : Error(code, "seq " + std::to_string(seq) + ": " + message), seq_(seq) {}

}  // namespace plainloop
