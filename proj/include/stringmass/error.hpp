#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stringmass {

enum class ErrorCode {
    NonPositiveCoefficient,
    DomainMismatch,
    QuadratureFailure,
    StepBudgetExceeded,
    NonFiniteState,
    PoleProximity,
    RootCountShortfall,
    BracketFailure,
    InterlacingViolation,
    ThresholdTooLarge,
    JumpConditionViolation,
    BranchAmbiguity,
    CompatibilityViolation,
    UnderResolvedTrace,
    TimeHorizonTooShort,
    IllConditioned,
    CFLViolation,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Numerical failure raised by any module. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
public:
    NumericError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Malformed or unreadable configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stringmass
