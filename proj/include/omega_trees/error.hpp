#pragma once

/// @file error.hpp
/// @brief Error codes and the exception type thrown across the library.

#include <stdexcept>
#include <string>
#include <string_view>

namespace omt {

enum class ErrorCode {
  NotASequenceCode,
  CodeOverflow,
  OracleError,
  StreamExhausted,
  NotDescending,
  NotOrderPreserving,
  NonFiniteTree,
  PrefixClosureViolation,
  LabelBoundViolation,
  MalformedPadding,
  EmptyTree,
  InvalidPoint,
  BudgetExceeded,
  NoIsomorphism,
  NotAMember,
  NonBinaryAlphabet,
  NoPositiveMeasure,
  NotInField,
  FieldTooLarge,
  InvalidOrder,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of a domain contract (as opposed to malformed input).
bool is_contract_violation(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace omt
