#include "sama/error.hpp"

namespace sama {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MixedDimensions: return "MixedDimensions";
    case ErrorCode::EmptyClip: return "EmptyClip";
    case ErrorCode::InsufficientFrames: return "InsufficientFrames";
    case ErrorCode::InputTooSmall: return "InputTooSmall";
    case ErrorCode::GridTooFine: return "GridTooFine";
    case ErrorCode::CellSmallerThanFragment: return "CellSmallerThanFragment";
    case ErrorCode::IndivisibleDims: return "IndivisibleDims";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace sama
