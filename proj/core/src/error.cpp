#include "evacrec/error.hpp"

#include <utility>

namespace evacrec {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownEntity: return "UnknownEntity";
    case ErrorCode::kLicenseMismatch: return "LicenseMismatch";
    case ErrorCode::kAlreadyPaired: return "AlreadyPaired";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kGraphViolation: return "GraphViolation";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kMatrixIncomplete: return "MatrixIncomplete";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kStalePlan: return "StalePlan";
    case ErrorCode::kStaleMatrix: return "StaleMatrix";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kBusy: return "Busy";
    case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(message), code_(code), details_(std::move(details)) {}

}  // namespace evacrec
