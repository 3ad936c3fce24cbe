#pragma once

#include <stdexcept>
#include <string>

namespace rep2ldc {

enum class ErrorCode {
  Parse,
  CapExceeded,
  NotInvertible,
  DimensionMismatch,
  ZeroMatrix,
  ZeroVector,
  IdentityElement,
  ScalarMultipleOfIdentity,
  OrbitDoesNotSpan,
  InternalInconsistency,
  BudgetExhausted,
  NotADistribution,
  PairNotSeparated,
  MatchingCrossesPrefixClass,
  CharTwo,
  NoRootOfUnity,
  BadCharacteristic,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rep2ldc
