#include "omega_trees/error.hpp"

namespace omt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotASequenceCode: return "NotASequenceCode";
    case ErrorCode::CodeOverflow: return "CodeOverflow";
    case ErrorCode::OracleError: return "OracleError";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::NotOrderPreserving: return "NotOrderPreserving";
    case ErrorCode::NonFiniteTree: return "NonFiniteTree";
    case ErrorCode::PrefixClosureViolation: return "PrefixClosureViolation";
    case ErrorCode::LabelBoundViolation: return "LabelBoundViolation";
    case ErrorCode::MalformedPadding: return "MalformedPadding";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoIsomorphism: return "NoIsomorphism";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::NonBinaryAlphabet: return "NonBinaryAlphabet";
    case ErrorCode::NoPositiveMeasure: return "NoPositiveMeasure";
    case ErrorCode::NotInField: return "NotInField";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_contract_violation(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::NotASequenceCode:
    case ErrorCode::InvalidOrder:
    case ErrorCode::EmptyTree:
    case ErrorCode::PrefixClosureViolation:
      return false;
    default:
      return true;
  }
}

}  // namespace omt
