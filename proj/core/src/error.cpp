#include "tsfloquet/error.hpp"

namespace tsfloquet {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonpositivePeriod: return "NonpositivePeriod";
        case ErrorCode::EndpointNotCovered: return "EndpointNotCovered";
        case ErrorCode::OverlappingSegments: return "OverlappingSegments";
        case ErrorCode::DegenerateInterval: return "DegenerateInterval";
        case ErrorCode::OutOfPeriod: return "OutOfPeriod";
        case ErrorCode::PointNotInTimeScale: return "PointNotInTimeScale";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::ArityError: return "ArityError";
        case ErrorCode::NonConstantExponent: return "NonConstantExponent";
        case ErrorCode::NonConstantArgument: return "NonConstantArgument";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NonIntegerNeg1Pow: return "NonIntegerNeg1Pow";
        case ErrorCode::NonDifferentiableNode: return "NonDifferentiableNode";
        case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
        case ErrorCode::NotRegressive: return "NotRegressive";
        case ErrorCode::InvalidSystem: return "InvalidSystem";
        case ErrorCode::PhiVanishes: return "PhiVanishes";
        case ErrorCode::NegativeQOnDense: return "NegativeQOnDense";
        case ErrorCode::DepthBudgetExceeded: return "DepthBudgetExceeded";
        case ErrorCode::NotContinuousScale: return "NotContinuousScale";
        case ErrorCode::BNotOne: return "BNotOne";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::CheckFailed: return "CheckFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace tsfloquet
