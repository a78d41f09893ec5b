#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evacrec {

enum class ErrorCode {
  kSchemaViolation,
  kDuplicateId,
  kUnknownEntity,
  kLicenseMismatch,
  kAlreadyPaired,
  kIoError,
  kGraphViolation,
  kEmptyGraph,
  kUnknownNode,
  kMatrixIncomplete,
  kInstanceTooLarge,
  kStalePlan,
  kStaleMatrix,
  kInvalidState,
  kBusy,
  kBadRequest,
};

// Stable wire name, e.g. "SchemaViolation".
std::string_view error_code_name(ErrorCode code) noexcept;

// Every recoverable failure in the library surfaces as an Error. `details`
// carries one human-readable line per violation when a validation pass found
// several problems at once.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace evacrec
