#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cloneval {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kUnsupportedLanguage,
  kEmptyFragment,
  kInsufficientClasses,
  kSingleClassTrainingSet,
  kDivergedLoss,
  kDimensionMismatch,
  kEmptyPartition,
  kVersionMismatch,
  kFeatureOrderMismatch,
  kMalformedDocument,
  kInsufficientData,
  kLengthMismatch,
  kSingleClassLabels,
  kNoMutableSite,
  kCorpusTooSmall,
  kExhaustedResampling,
  kMalformedRow,
  kMissingSourceFile,
  kUnknownPair,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (CLI, HTTP layer) can map it to an exit code or a status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cloneval
