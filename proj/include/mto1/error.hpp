#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mto1 {

enum class ErrorCode {
  NotPrime,
  DegreeZero,
  SizeCapExceeded,
  NotIrreducible,
  NotPrimitive,
  DivisionByZero,
  ZeroToNegativePower,
  WrongCharacteristic,
  EvenCharacteristic,
  ZeroInput,
  PreconditionViolated,
  MOutOfRange,
  NormMismatch,
  DegenerateAB,
  ValueNotInSubfield,
  LeadingZero,
  ZeroLeading,
  IndivisibleExponent,
  DegreeTooHigh,
  NoMatchingRow,
  NotAPermutation,
  NotInjective,
  NotTwoToOne,
  FibersNotTranslations,
  NoTranslationInvolution,
  VerificationFailed,
  InvalidSpec,
  InvalidConfig,
  InternalError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every library failure surfaces as this one exception type; the code is the
// machine-readable part, the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mto1
