#include "essmart/common/error.h"

namespace essmart {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kTooFewRecords: return "TooFewRecords";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kCoverageMismatch: return "CoverageMismatch";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kTooFewRowsPerFold: return "TooFewRowsPerFold";
    case ErrorCode::kMissingSource: return "MissingSource";
    case ErrorCode::kNotTrained: return "NotTrained";
    case ErrorCode::kEmptyDocuments: return "EmptyDocuments";
    case ErrorCode::kUnknownBrand: return "UnknownBrand";
    case ErrorCode::kNoValidPath: return "NoValidPath";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptArtifact: return "CorruptArtifact";
    case ErrorCode::kStageFailed: return "StageFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace essmart
