#include "cloneval/error.hpp"

namespace cloneval {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kUnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::kEmptyFragment: return "EmptyFragment";
    case ErrorCode::kInsufficientClasses: return "InsufficientClasses";
    case ErrorCode::kSingleClassTrainingSet: return "SingleClassTrainingSet";
    case ErrorCode::kDivergedLoss: return "DivergedLoss";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyPartition: return "EmptyPartition";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kFeatureOrderMismatch: return "FeatureOrderMismatch";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSingleClassLabels: return "SingleClassLabels";
    case ErrorCode::kNoMutableSite: return "NoMutableSite";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kExhaustedResampling: return "ExhaustedResampling";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kMissingSourceFile: return "MissingSourceFile";
    case ErrorCode::kUnknownPair: return "UnknownPair";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace cloneval
