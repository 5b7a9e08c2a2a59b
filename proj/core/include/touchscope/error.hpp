#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace touchscope {

// Error codes are part of the wire contract: the service reports them by
// name, so keep error_code_name() in sync when adding entries.
enum class ErrorCode {
  EmptyLog,
  CorruptLog,
  InvalidDevice,
  AnisotropicDevice,
  InvalidSampleCount,
  DimensionMismatch,
  ZeroNorm,
  TooFewPoints,
  EmptySelection,
  InvalidConfidence,
  OutOfBounds,
  DegeneratePeriod,
  AmbiguousRegions,
  InvalidRegion,
  InvalidArgument,
  SessionNotFound,
  SessionBusy,
  StoreIo,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace touchscope
