#pragma once

#include <stdexcept>
#include <string>

namespace qwmix {

// One code per failure mode the library can report. Tests match on these
// rather than on message text.
enum class ErrorCode {
  NotSquare,
  NotHermitian,
  ConvergenceFailure,
  ShapeMismatch,
  NotSimpleGraph,
  ZeroNotSimple,
  AllOnesNotKernel,
  SizeCap,
  SigningRequiresD4,
  NotHermitianCirculant,
  NotOdd,
  NotEven,
  ConstructionCheckFailed,
  TooSmall,
  SpectrumMismatch,
  NotEulerian,
  Disconnected,
  InvalidGroupTable,
  ConnectionNotInverseClosed,
  ConnectionContainsIdentity,
  IndexOutOfRange,
  PreconditionUnmet,
  NotEquitable,
  ClosedFormMismatch,
  CellNotSingleton,
  SupportMismatch,
  DimensionMismatch,
  CollapseUndefined,
  ConeInvalid,
  BadInput,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSimpleGraph: return "NotSimpleGraph";
    case ErrorCode::ZeroNotSimple: return "ZeroNotSimple";
    case ErrorCode::AllOnesNotKernel: return "AllOnesNotKernel";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::SigningRequiresD4: return "SigningRequiresD4";
    case ErrorCode::NotHermitianCirculant: return "NotHermitianCirculant";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::ConstructionCheckFailed: return "ConstructionCheckFailed";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorCode::NotEulerian: return "NotEulerian";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidGroupTable: return "InvalidGroupTable";
    case ErrorCode::ConnectionNotInverseClosed: return "ConnectionNotInverseClosed";
    case ErrorCode::ConnectionContainsIdentity: return "ConnectionContainsIdentity";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::NotEquitable: return "NotEquitable";
    case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorCode::CellNotSingleton: return "CellNotSingleton";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CollapseUndefined: return "CollapseUndefined";
    case ErrorCode::ConeInvalid: return "ConeInvalid";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace qwmix
