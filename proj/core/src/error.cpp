#include "touchscope/error.hpp"

namespace touchscope {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::InvalidDevice: return "InvalidDevice";
    case ErrorCode::AnisotropicDevice: return "AnisotropicDevice";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::InvalidConfidence: return "InvalidConfidence";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::DegeneratePeriod: return "DegeneratePeriod";
    case ErrorCode::AmbiguousRegions: return "AmbiguousRegions";
    case ErrorCode::InvalidRegion: return "InvalidRegion";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SessionNotFound: return "SessionNotFound";
    case ErrorCode::SessionBusy: return "SessionBusy";
    case ErrorCode::StoreIo: return "StoreIo";
  }
  return "Unknown";
}

}  // namespace touchscope
