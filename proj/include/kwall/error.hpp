#pragma once

#include <stdexcept>
#include <string>

namespace kwall {

enum class ErrorCode {
  Parse,
  Grading,
  SingularMatrix,
  Elimination,
  ZeroForm,
  Range,
  Parity,
  AmbientMismatch,
  UnknownWalls,
  NotProportional,
  Io,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Grading: return "GradingError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::Elimination: return "EliminationError";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::Range: return "RangeError";
    case ErrorCode::Parity: return "ParityError";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::UnknownWalls: return "UnknownWalls";
    case ErrorCode::NotProportional: return "NotProportional";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace kwall
