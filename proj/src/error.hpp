#pragma once

#include <stdexcept>
#include <string>

namespace seqhyper {

enum class ErrorCode {
  kInvalidArgument = 1,
  kPrecondition = 2,
  kSchema = 3,
  kUnsupported = 4,
  kOverflow = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kOverflow: return "overflow";
  }
  return "unknown";
}

// Three-valued verdict for depth-bounded checks.
enum class Tri { kFalse = 0, kTrue = 1, kUnknown = 2 };

inline Tri tri(bool b) { return b ? Tri::kTrue : Tri::kFalse; }
inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::kFalse: return "fail";
    case Tri::kTrue: return "pass";
    default: return "unknown-at-depth";
  }
}

}  // namespace seqhyper
