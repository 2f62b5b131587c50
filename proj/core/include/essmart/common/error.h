#ifndef ESSMART_COMMON_ERROR_H_
#define ESSMART_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace essmart {

// Every failure surfaced by the library carries one of these codes so that
// callers (CLI, HTTP service) can map errors without parsing messages.
enum class ErrorCode {
  kIo,
  kInvalidArgument,
  kMalformedRecord,
  kDuplicateId,
  kTooFewRecords,
  kSingleClass,
  kEmptyCorpus,
  kEmptyInput,
  kDegenerateLabels,
  kCoverageMismatch,
  kInvalidParameter,
  kWidthMismatch,
  kTooFewRowsPerFold,
  kMissingSource,
  kNotTrained,
  kEmptyDocuments,
  kUnknownBrand,
  kNoValidPath,
  kVersionMismatch,
  kCorruptArtifact,
  kStageFailed,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace essmart

#endif  // ESSMART_COMMON_ERROR_H_
