#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace camshift {

enum class ErrorCode {
  index_out_of_range,
  budget_exceeded,
  pattern_too_long,
  empty_pattern,
  invalid_parameter,
  search_budget_exceeded,
  precondition_violated,
  out_of_built_range,
  misaligned_window,
  stamp_count_too_large,
  shape_mismatch,
  enumeration_too_large,
  reducible_matrix,
  no_convergence,
  malformed_input,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace camshift
