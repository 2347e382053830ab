#pragma once

#include <stdexcept>
#include <string>

namespace fglforge {

enum class ErrorCode {
  InverseOfNonUnit,
  NonIntegralCoefficient,
  NonIntegralResult,
  AmbientMismatch,
  UnassignedVariable,
  DegreeBoundExceeded,
  NonTwoTypicalIso,
  SourceTargetMismatch,
  NonUnit,
  HeightExceedsCutoff,
  ConsistencyFailure,
  VerificationFailure,
  TruncationOverflow,
  NotQTorsion,
  RankDeficient,
  InvalidArgument,
  TeichmullerDivergence,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fglforge
