#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rplan {

// Numeric values are part of the C API (see routingplan.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kSyntaxError = 1,
  kTrapOnTerminal = 2,
  kZeroReload = 3,
  kGoalExceedsAssets = 4,
  kDanglingEdge = 5,
  kStartEqualsTarget = 6,
  kSelfLoop = 7,
  kDuplicateEdge = 8,
  kMissingField = 9,
  kNoAssets = 10,
  kReservedName = 11,
  kInvalidPlan = 20,
  kOccupancyConflict = 21,
  kIllegalEdge = 22,
  kReturnToStart = 23,
  kNoMovement = 24,
  kMoveFromAbsorbing = 25,
  kNotAPath = 30,
  kNotAStar = 31,
  kNotDisjointPaths = 32,
  kNotCondensedLinear = 33,
  kIntractableFragment = 34,
  kGuardExceeded = 35,
  kInvalidParameter = 40,
  kNotRX3C = 41,
  kNot3Partition = 42,
  kMaterializationTooLarge = 43,
  kIoError = 50,
  kInternal = 99,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Syntax errors carry the 1-based line number of the offending input line.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kSyntaxError,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rplan
