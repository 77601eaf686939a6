#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlat {

enum class ErrorCode {
  NotSymmetric,
  Degenerate,
  InvalidParameter,
  DimensionMismatch,
  BudgetExceeded,
  NoPositiveConeSet,
  DifferentAmbient,
  NotIsotropic,
  NotPrimitive,
  SameRay,
  NotInCone,
  NotOrthogonal,
  WrongComponent,
  EllipticHasNoBoundaryFixedPoint,
  WrongNorm,
  NonIntegralResult,
  FixedBasepoint,
  DimensionBudgetExceeded,
  OnWall,
  BudgetExhausted,
  WrongSignature,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

// Budget errors map to CLI exit code 2, everything else to 1.
bool is_budget_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperlat
