#include "hyperforge/errors.h"

namespace hyperforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownMode:
      return "UnknownMode";
    case ErrorCode::kStateTerminated:
      return "StateTerminated";
    case ErrorCode::kUnsupportedDegree:
      return "UnsupportedDegree";
    case ErrorCode::kFourierUnsupported:
      return "FourierUnsupported";
    case ErrorCode::kUnsupportedCommutation:
      return "UnsupportedCommutation";
    case ErrorCode::kUnsupportedOp:
      return "UnsupportedOp";
    case ErrorCode::kDegeneratePivot:
      return "DegeneratePivot";
    case ErrorCode::kShapeMismatch:
      return "ShapeMismatch";
    case ErrorCode::kCutoffTooSmall:
      return "CutoffTooSmall";
    case ErrorCode::kDimensionOverflow:
      return "DimensionOverflow";
    case ErrorCode::kMalformedInput:
      return "MalformedInput";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hyperforge
