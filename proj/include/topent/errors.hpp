#pragma once

#include <stdexcept>
#include <string>

namespace topent {

enum class ErrorCode {
  NotSquare,
  EntryNotBit,
  ZeroRow,
  ZeroColumn,
  CountTooLarge,
  NoConvergence,
  InvalidSequence,
  InvalidSystem,
  OutOfDomain,
  SizeMismatch,
  InvalidCover,
  NotATransitionMatrix,
  EmptyLevel,
  NoContraction,
  BadConfig,
  ParseError,
};

const char* error_code_name(ErrorCode code);

// index carries the offending 1-based row/column/level (or iteration cap for
// NoConvergence) when the code calls for one, else -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, long long index = -1)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  long long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long long index_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message,
                               long long index = -1) {
  throw Error(code, message, index);
}

}  // namespace topent
