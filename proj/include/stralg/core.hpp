#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stralg {

enum class ErrorKind {
  Syntax,
  UnknownId,
  NotComposable,
  NotAString,
  NotABand,
  NotInHammock,
  IndexOutOfRange,
  UndefinedOperator,
  NotAnInclusionShape,
  NotAnImageSubstring,
  InvalidDescriptor,
  SignConflict,
  Precondition,
  NotMetaTorsionFree,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownId: return "unknown-id";
    case ErrorKind::NotComposable: return "not-composable";
    case ErrorKind::NotAString: return "not-a-string";
    case ErrorKind::NotABand: return "not-a-band";
    case ErrorKind::NotInHammock: return "not-in-hammock";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::UndefinedOperator: return "undefined-operator";
    case ErrorKind::NotAnInclusionShape: return "not-an-inclusion-shape";
    case ErrorKind::NotAnImageSubstring: return "not-an-image-substring";
    case ErrorKind::InvalidDescriptor: return "invalid-descriptor";
    case ErrorKind::SignConflict: return "sign-conflict";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NotMetaTorsionFree: return "not-meta-torsion-free";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by internal consistency checks; maps to CLI exit code 3.
inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::Internal, "invariant breach: " + what);
}

}  // namespace stralg
