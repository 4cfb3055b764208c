#include "camshift/error.hpp"

namespace camshift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::pattern_too_long: return "PatternTooLong";
    case ErrorCode::empty_pattern: return "EmptyPattern";
    case ErrorCode::invalid_parameter: return "InvalidParameter";
    case ErrorCode::search_budget_exceeded: return "SearchBudgetExceeded";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::out_of_built_range: return "OutOfBuiltRange";
    case ErrorCode::misaligned_window: return "MisalignedWindow";
    case ErrorCode::stamp_count_too_large: return "StampCountTooLarge";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::enumeration_too_large: return "EnumerationTooLarge";
    case ErrorCode::reducible_matrix: return "ReducibleMatrix";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::malformed_input: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace camshift
