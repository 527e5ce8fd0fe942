#include "stringmass/error.hpp"

namespace stringmass {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::RootCountShortfall: return "RootCountShortfall";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::InterlacingViolation: return "InterlacingViolation";
    case ErrorCode::ThresholdTooLarge: return "ThresholdTooLarge";
    case ErrorCode::JumpConditionViolation: return "JumpConditionViolation";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::UnderResolvedTrace: return "UnderResolvedTrace";
    case ErrorCode::TimeHorizonTooShort: return "TimeHorizonTooShort";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace stringmass
