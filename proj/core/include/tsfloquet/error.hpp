#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsfloquet {

enum class ErrorCode {
    // time scale
    NonpositivePeriod,
    EndpointNotCovered,
    OverlappingSegments,
    DegenerateInterval,
    OutOfPeriod,
    PointNotInTimeScale,
    // expressions
    SyntaxError,
    ArityError,
    NonConstantExponent,
    NonConstantArgument,
    DomainError,
    NonIntegerNeg1Pow,
    NonDifferentiableNode,
    // calculus
    QuadratureNonConvergence,
    NotRegressive,
    // floquet
    InvalidSystem,
    PhiVanishes,
    NegativeQOnDense,
    DepthBudgetExceeded,
    NotContinuousScale,
    BNotOne,
    // oracle
    StepSizeUnderflow,
    CheckFailed,
    // cli
    ParseError,
    ValidationError,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tsfloquet
