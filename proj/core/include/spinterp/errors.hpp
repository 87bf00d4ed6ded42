#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinterp {

enum class ErrorCode {
  NotPrime,
  RingTooSmall,
  RingMismatch,
  ArityMismatch,
  ParseError,
  UnknownVariable,
  BackendFailure,
  SingularSystem,
  BoundsViolated,
  PreconditionViolated,
};

// Stable snake_case names; the CLI prints these as machine-readable reasons.
constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::RingTooSmall: return "ring_too_small";
    case ErrorCode::RingMismatch: return "ring_mismatch";
    case ErrorCode::ArityMismatch: return "arity_mismatch";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::BackendFailure: return "backend_failure";
    case ErrorCode::SingularSystem: return "singular_system";
    case ErrorCode::BoundsViolated: return "bounds_violated";
    case ErrorCode::PreconditionViolated: return "precondition_violated";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the polynomial and expression readers. position is a byte offset
// into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::ParseError, what + " at offset " + std::to_string(position)),
        position_(position) {}

  // File-level errors where the message already carries a line number.
  static ParseError at_line(std::size_t line, const std::string& what) {
    return ParseError(line, "line " + std::to_string(line) + ": " + what, Raw{});
  }

  std::size_t position() const noexcept { return position_; }

 private:
  struct Raw {};
  ParseError(std::size_t position, const std::string& what, Raw)
      : Error(ErrorCode::ParseError, what), position_(position) {}

  std::size_t position_;
};

}  // namespace spinterp
