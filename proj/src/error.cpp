#include "hyperlat/error.hpp"

namespace hyperlat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoPositiveConeSet: return "NoPositiveConeSet";
    case ErrorCode::DifferentAmbient: return "DifferentAmbient";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::SameRay: return "SameRay";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::WrongComponent: return "WrongComponent";
    case ErrorCode::EllipticHasNoBoundaryFixedPoint: return "EllipticHasNoBoundaryFixedPoint";
    case ErrorCode::WrongNorm: return "WrongNorm";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::FixedBasepoint: return "FixedBasepoint";
    case ErrorCode::DimensionBudgetExceeded: return "DimensionBudgetExceeded";
    case ErrorCode::OnWall: return "OnWall";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

bool is_budget_error(ErrorCode code) {
  return code == ErrorCode::BudgetExceeded || code == ErrorCode::DimensionBudgetExceeded ||
         code == ErrorCode::BudgetExhausted;
}

}  // namespace hyperlat
