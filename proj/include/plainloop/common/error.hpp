#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plainloop {

enum class ErrorCode {
  EmptyText,
  NoReferences,
  ProviderUnavailable,
  SyntaxError,
  DuplicateRuleId,
  UnresolvedSymbol,
  InvalidInterval,
  MissingComponent,
  NoData,
  EmptyGold,
  LengthMismatch,
  DegenerateDistribution,
  InvalidArgument,
  MissingRationale,
  UnknownDimension,
  EmptySource,
  IllegalTransition,
  NotInReview,
  NonCompliantChecklist,
  InvalidDecision,
  RegenerationLimit,
  UnknownItem,
  StorageFailure,
  CorruptLog,
  DivergentState,
  LegalHold,
  RangeEmpty,
  InsufficientData,
  InvalidConfig,
  InvalidInput,
  DuplicateItem,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the pipeline carries a stable code so callers
// (the HTTP layer, the CLI exit-code mapping, tests) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string token, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

// CorruptLog and DivergentState name the first offending sequence number.
class LogError : public Error {
 public:
  LogError(ErrorCode code, std::uint64_t seq, const std::string& message);

  std::uint64_t seq() const noexcept { return seq_; }

 private:
  std::uint64_t seq_;
};

}  // namespace plainloop
