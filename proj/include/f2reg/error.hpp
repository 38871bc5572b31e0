#pragma once

#include <stdexcept>
#include <string>

namespace f2reg {

enum class ErrorCode {
  kSingularMatrix,
  kDimensionMismatch,
  kMapDoesNotCarryBasis,
  kNotAComplement,
  kCapExceeded,
  kDyadicOverflow,
  kDegreeTooHigh,
  kDegreeMismatch,
  kPreconditionViolated,
  kSupportMismatch,
  kZeroGamma,
  kNoCollisionWithinBudget,
  kEvenN,
  kInconsistentConstraints,
  kParseError,
  kInvariantViolation,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace f2reg
