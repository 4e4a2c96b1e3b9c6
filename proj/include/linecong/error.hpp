#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linecong {

enum class ErrorKind {
  ZeroVector,
  SyntaxError,
  NotHomogeneous,
  UnknownVariable,
  DegreeMismatch,
  AllZero,
  WrongDegree,
  Indecomposable,
  ZeroInput,
  CoincidentPoints,
  CoincidentPlanes,
  LineInPlane,
  BasePoint,
  NotDominant,
  NoSpecialPlanes,
  DegenerateConfiguration,
  NotBirational,
  InconsistentData,
  DegenerateTarget,
  DegenerateFamily,
  DependentSyzygies,
  NotLinear,
  WrongType,
  NotDegenerate,
  PlanarCongruence,
  Unclassifiable,
  NoMatch,
  ExtensionMismatch,
  Io,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::Indecomposable: return "Indecomposable";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::CoincidentPlanes: return "CoincidentPlanes";
    case ErrorKind::LineInPlane: return "LineInPlane";
    case ErrorKind::BasePoint: return "BasePoint";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NoSpecialPlanes: return "NoSpecialPlanes";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NotBirational: return "NotBirational";
    case ErrorKind::InconsistentData: return "InconsistentData";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::DegenerateFamily: return "DegenerateFamily";
    case ErrorKind::DependentSyzygies: return "DependentSyzygies";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::WrongType: return "WrongType";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::PlanarCongruence: return "PlanarCongruence";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `kind()`
/// identifies the failure class, `what()` carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace linecong
