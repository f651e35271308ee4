#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperforge {

// Stable, machine-readable failure categories. The names returned by
// error_code_name() are part of the CLI and HTTP contract; do not rename.
enum class ErrorCode {
  kUnknownMode,
  kStateTerminated,
  kUnsupportedDegree,
  kFourierUnsupported,
  kUnsupportedCommutation,
  kUnsupportedOp,
  kDegeneratePivot,
  kShapeMismatch,
  kCutoffTooSmall,
  kDimensionOverflow,
  kMalformedInput,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class HyperforgeError : public std::runtime_error {
 public:
  HyperforgeError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

// Raised by circuit replay; carries the zero-based index of the failing op.
class CircuitError : public HyperforgeError {
 public:
  CircuitError(ErrorCode code, std::size_t step, const std::string& message)
      : HyperforgeError(code, message), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace hyperforge
